use std::fs;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lpa_core::analysis::{analyze, enumerate_cycles, enumerate_hs_subsets, CYCLE_CAP, SUBSET_BOUND};
use lpa_core::constructive::{laurent_check, laurent_samples, ProofStep};
use lpa_core::expr::parse_expression_detailed;
use lpa_core::oracle::{expansion_closure, CLOSURE_CAP};
use lpa_core::random::{random_element, rng};
use lpa_core::repr::{Combination, VectorReport};
use lpa_core::{
    decide_congruence_simple, decide_ideal_simple, eq_with, format_element, line_graph_matrix_iso, load_graph,
    real_to_vertex, rose_leavitt_check, sink_normal_form, Answer, Booleans, Element, EqConfig, EqVerdict, Graph, Lpa,
    Naturals, PrimeField, Rationals, RealElement, Semiring, TermKey, Tropical,
};

#[derive(Parser, Debug)]
#[command(name = "lpa", version, about = "Leavitt path algebras over commutative semirings")]
struct Cli {
    /// boolean, nat, rational, tropical or gf:<p>
    #[arg(long, global = true, default_value = "rational", value_parser = parse_semiring)]
    semiring: SemiringKind,
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Expansion rounds for the equality search.
    #[arg(long, global = true, default_value_t = EqConfig::default().budget)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Lift the size caps on exhaustive enumerations.
    #[arg(long, global = true)]
    force: bool,
    /// Report product terms that evaluate to zero.
    #[arg(long, global = true)]
    warn_zero: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex classes, cycles and hereditary saturated subsets.
    Analyze { graph: PathBuf },
    /// Decide ideal- or congruence-simpleness.
    Decide { question: QuestionArg, graph: PathBuf },
    /// Evaluate expressions, optionally comparing two of them.
    Eval {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr", required = true)]
        exprs: Vec<String>,
        #[arg(long)]
        check_eq: bool,
        /// Fail unless `--check-eq` reaches this verdict.
        #[arg(long, requires = "check_eq")]
        expect: Option<Expectation>,
    },
    /// Conjugate a real element to a vertex.
    Reduce {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    #[command(subcommand)]
    Demo(Demo),
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// L(A_n) against n×n matrices.
    MatrixIso { n: usize },
    /// Leavitt relations on the rose with n petals.
    Leavitt { n: usize },
    /// Laurent polynomials on the single loop.
    Laurent {
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Oracle {
    HsEnum {
        graph: PathBuf,
    },
    CycleEnum {
        graph: PathBuf,
    },
    /// Equality by intersecting expansion closures, acyclic graphs only.
    EqClosure {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr")]
        exprs: Vec<String>,
        /// Also compare the engine with the oracle on this many seeded
        /// random pairs.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expectation {
    Equal,
    Distinct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuestionArg {
    Ideal,
    Congruence,
}

#[derive(Clone, Copy, Debug)]
enum SemiringKind {
    Boolean,
    Nat,
    Rational,
    Tropical,
    Gf(u64),
}

fn parse_semiring(s: &str) -> Result<SemiringKind, String> {
    match s {
        "boolean" => Ok(SemiringKind::Boolean),
        "nat" => Ok(SemiringKind::Nat),
        "rational" => Ok(SemiringKind::Rational),
        "tropical" => Ok(SemiringKind::Tropical),
        _ => match s.strip_prefix("gf:").map(str::parse::<u64>) {
            Some(Ok(p)) => PrimeField::new(p)
                .map(|_| SemiringKind::Gf(p))
                .map_err(|e| e.to_string()),
            _ => Err(format!(
                "unknown semiring {s:?}; expected boolean, nat, rational, tropical or gf:<p>"
            )),
        },
    }
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Value,
    result: Value,
    diagnostics: Vec<String>,
    exit_code: u8,
}

/// What a command produced: a JSON payload, the lines shown without
/// `--json`, and whether a verification failed.
struct Outcome {
    result: Value,
    lines: Vec<String>,
    diagnostics: Vec<String>,
    failed: bool,
}

impl Outcome {
    fn new(result: Value, lines: Vec<String>) -> Self {
        Outcome {
            result,
            lines,
            diagnostics: Vec::new(),
            failed: false,
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Analyze { .. } => "analyze".into(),
        Command::Decide { question, .. } => format!("decide {}", question_name(*question)),
        Command::Eval { .. } => "eval".into(),
        Command::Reduce { .. } => "reduce".into(),
        Command::Demo(Demo::MatrixIso { .. }) => "demo matrix-iso".into(),
        Command::Demo(Demo::Leavitt { .. }) => "demo leavitt".into(),
        Command::Demo(Demo::Laurent { .. }) => "demo laurent".into(),
        Command::Oracle(Oracle::HsEnum { .. }) => "oracle hs-enum".into(),
        Command::Oracle(Oracle::CycleEnum { .. }) => "oracle cycle-enum".into(),
        Command::Oracle(Oracle::EqClosure { .. }) => "oracle eq-closure".into(),
    }
}

fn question_name(q: QuestionArg) -> &'static str {
    match q {
        QuestionArg::Ideal => "ideal",
        QuestionArg::Congruence => "congruence",
    }
}

fn semiring_name(k: SemiringKind) -> String {
    match k {
        SemiringKind::Boolean => "boolean".into(),
        SemiringKind::Nat => "nat".into(),
        SemiringKind::Rational => "rational".into(),
        SemiringKind::Tropical => "tropical".into(),
        SemiringKind::Gf(p) => format!("gf:{p}"),
    }
}

fn inputs(cli: &Cli) -> Value {
    let mut v = json!({ "semiring": semiring_name(cli.semiring), "seed": cli.seed, "budget": cli.budget });
    let (graph, exprs): (Option<&PathBuf>, Vec<&String>) = match &cli.command {
        Command::Analyze { graph } | Command::Decide { graph, .. } => (Some(graph), vec![]),
        Command::Eval { graph, exprs, .. } => (Some(graph), exprs.iter().collect()),
        Command::Reduce { graph, expr } => (Some(graph), vec![expr]),
        Command::Oracle(Oracle::HsEnum { graph } | Oracle::CycleEnum { graph }) => (Some(graph), vec![]),
        Command::Oracle(Oracle::EqClosure { graph, exprs, .. }) => (Some(graph), exprs.iter().collect()),
        Command::Demo(_) => (None, vec![]),
    };
    if let Some(g) = graph {
        v["graph"] = json!(g.display().to_string());
    }
    if !exprs.is_empty() {
        v["expressions"] = json!(exprs);
    }
    v
}

fn read_graph(path: &FsPath) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    load_graph(&text).with_context(|| format!("invalid graph file {}", path.display()))
}

fn parse_all<S: Semiring>(
    lpa: &Lpa<S>,
    exprs: &[String],
    warn_zero: bool,
    diagnostics: &mut Vec<String>,
) -> anyhow::Result<Vec<Element<S::Elem>>> {
    exprs
        .iter()
        .enumerate()
        .map(|(i, src)| {
            let parsed =
                parse_expression_detailed(src, lpa).with_context(|| format!("expression {} ({src:?})", i + 1))?;
            if warn_zero {
                for (col, term) in parsed.zero_terms {
                    diagnostics.push(format!(
                        "expression {}, column {col}: `{term}` evaluates to zero",
                        i + 1
                    ));
                }
            }
            Ok(parsed.element)
        })
        .collect()
}

fn key_name<S: Semiring>(lpa: &Lpa<S>, key: &TermKey) -> String {
    format_element(lpa, &lpa.term(lpa.ring().one(), key.clone()))
}

fn combination_json<S: Semiring>(lpa: &Lpa<S>, c: &Combination<S::Elem>) -> Value {
    Value::Array(
        c.iter()
            .map(|(b, coeff)| json!({ "coeff": lpa.ring().format_scalar(coeff), "vector": VectorReport::new(lpa.graph(), b) }))
            .collect(),
    )
}

fn normal_form<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> anyhow::Result<String> {
    let nf = if lpa.graph().is_acyclic() {
        sink_normal_form(lpa, x)?
    } else {
        x.clone()
    };
    Ok(format_element(lpa, &nf))
}

fn run_analyze(g: &Graph, force: bool) -> anyhow::Result<Outcome> {
    let report = analyze(g, CYCLE_CAP, force);
    let result = serde_json::to_value(&report)?;
    let lines = vec![serde_json::to_string_pretty(&report)?];
    let mut out = Outcome::new(result, lines);
    if report.hereditary_saturated.is_none() {
        out.diagnostics.push(format!(
            "more than {SUBSET_BOUND} vertices: subsets not listed (use --force)"
        ));
    }
    if report.cycles_truncated {
        out.diagnostics
            .push(format!("more than {CYCLE_CAP} cycles: only exitless cycles listed"));
    }
    Ok(out)
}

fn run_decide<S: Semiring>(g: &Graph, ring: &S, q: QuestionArg) -> anyhow::Result<Outcome> {
    let verdict = match q {
        QuestionArg::Ideal => decide_ideal_simple(g, ring)?,
        QuestionArg::Congruence => decide_congruence_simple(g, ring)?,
    };
    let answer = match verdict.answer {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::OutOfScope => "out_of_scope",
    };
    let mut lines = vec![format!("{}-simple over {}: {answer}", question_name(q), ring.name())];
    let mut failed = false;
    for w in &verdict.witnesses {
        let ok = w.verify(g, ring);
        failed |= !ok;
        lines.push(format!(
            "  witness {}{}",
            serde_json::to_string(w)?,
            if ok { "" } else { " (does not verify)" }
        ));
    }
    lines.extend(verdict.notes.iter().map(|n| format!("  note: {n}")));
    let mut out = Outcome::new(serde_json::to_value(&verdict)?, lines);
    out.failed = failed;
    Ok(out)
}

fn run_eval<S: Semiring>(
    lpa: &Lpa<S>,
    cli: &Cli,
    exprs: &[String],
    check_eq: bool,
    expect: Option<Expectation>,
) -> anyhow::Result<Outcome> {
    let mut diagnostics = Vec::new();
    let elems = parse_all(lpa, exprs, cli.warn_zero, &mut diagnostics)?;
    let mut lines = Vec::new();
    let mut values = Vec::new();
    for (src, x) in exprs.iter().zip(&elems) {
        let value = format_element(lpa, x);
        let nf = normal_form(lpa, x)?;
        lines.push(if nf == value {
            value.clone()
        } else {
            format!("{value}    (normal form {nf})")
        });
        values.push(json!({ "input": src, "value": value, "normal_form": nf }));
    }
    let mut result = json!({ "elements": values });
    let mut failed = false;
    if check_eq {
        let [x, y] = elems.as_slice() else {
            bail!("--check-eq needs exactly two expressions, got {}", elems.len());
        };
        let config = EqConfig {
            budget: cli.budget,
            ..EqConfig::default()
        };
        let verdict = eq_with(lpa, x, y, config)?;
        lines.push(format!("verdict: {}", verdict.tag()));
        let evidence = match &verdict {
            EqVerdict::Equal(trace) => {
                let ok = trace.replay(lpa, x, y)?;
                failed |= !ok;
                let left: Vec<String> = trace.left.iter().map(|k| key_name(lpa, k)).collect();
                let right: Vec<String> = trace.right.iter().map(|k| key_name(lpa, k)).collect();
                lines.push(format!(
                    "expanded on the left: {}",
                    if left.is_empty() { "-".into() } else { left.join(", ") }
                ));
                lines.push(format!(
                    "expanded on the right: {}",
                    if right.is_empty() { "-".into() } else { right.join(", ") }
                ));
                json!({ "trace": { "left": left, "right": right }, "replayed": ok })
            }
            EqVerdict::Distinct(sep) => {
                let ok = sep.verify(lpa, x, y)?;
                failed |= !ok;
                let vector = VectorReport::new(lpa.graph(), &sep.vector);
                lines.push(format!(
                    "separating vector: vertex {}, k = {}, tag {}",
                    vector.vertex, vector.k, vector.tag
                ));
                json!({
                    "vector": vector,
                    "left": combination_json(lpa, &sep.left),
                    "right": combination_json(lpa, &sep.right),
                    "verified": ok,
                })
            }
            EqVerdict::Unknown { budget, depth } => {
                diagnostics.push(format!("no proof within budget {budget} and depth {depth}"));
                json!({ "budget": budget, "depth": depth })
            }
        };
        if failed {
            diagnostics.push("the evidence did not re-verify".into());
        }
        let reached = match verdict {
            EqVerdict::Equal(_) => Some(Expectation::Equal),
            EqVerdict::Distinct(_) => Some(Expectation::Distinct),
            EqVerdict::Unknown { .. } => None,
        };
        if let Some(want) = expect.filter(|w| Some(*w) != reached) {
            failed = true;
            diagnostics.push(format!("expected {want:?}, got {}", verdict.tag()));
        }
        result["verdict"] = json!(verdict.tag());
        result["evidence"] = evidence;
    }
    let mut out = Outcome::new(result, lines);
    out.diagnostics = diagnostics;
    out.failed = failed;
    Ok(out)
}

fn step_json(g: &Graph, s: &ProofStep) -> Value {
    match s {
        ProofStep::PrefixSelection { prefix } => json!({ "step": s.tag(), "path": g.path_name(prefix) }),
        ProofStep::CspPower { cycle, power } => json!({ "step": s.tag(), "cycle": g.path_name(cycle), "power": power }),
        ProofStep::ExitPath { path } => json!({ "step": s.tag(), "path": g.path_name(path) }),
    }
}

fn run_reduce<S: Semiring>(lpa: &Lpa<S>, cli: &Cli, expr: &str) -> anyhow::Result<Outcome> {
    let mut diagnostics = Vec::new();
    let x = parse_all(lpa, &[expr.to_string()], cli.warn_zero, &mut diagnostics)?.remove(0);
    let alpha = RealElement::new(x).context("reduce needs an element without ghost edges")?;
    let cert = real_to_vertex(lpa, &alpha)?;
    let verdict = cert.verify(lpa)?;
    let g = lpa.graph();
    let result = json!({
        "left": format_element(lpa, &cert.left),
        "input": format_element(lpa, &cert.input),
        "right": format_element(lpa, &cert.right),
        "target": g.vertex_name(cert.target),
        "trace": cert.trace.iter().map(|s| step_json(g, s)).collect::<Vec<_>>(),
        "verdict": verdict.tag(),
    });
    let lines = vec![serde_json::to_string_pretty(&result)?];
    let mut out = Outcome::new(result, lines);
    out.diagnostics = diagnostics;
    out.failed = !verdict.is_equal();
    Ok(out)
}

fn report_outcome<T: Serialize>(report: &T, ok: bool, summary: String) -> anyhow::Result<Outcome> {
    let mut out = Outcome::new(
        serde_json::to_value(report)?,
        vec![summary, serde_json::to_string_pretty(report)?],
    );
    out.failed = !ok;
    Ok(out)
}

fn run_demo<S: Semiring>(ring: &S, cli: &Cli, demo: &Demo) -> anyhow::Result<Outcome> {
    match demo {
        Demo::MatrixIso { n } => {
            let r = line_graph_matrix_iso(*n, ring)?;
            let summary = format!(
                "L(A_{n}) over {} vs {n}x{n} matrices: {} products, {}",
                r.semiring,
                r.products_checked,
                if r.ok() { "all match" } else { "MISMATCH" }
            );
            report_outcome(&r, r.ok(), summary)
        }
        Demo::Leavitt { n } => {
            let r = rose_leavitt_check(*n, ring)?;
            let summary = format!(
                "rose with {n} petals over {}: {} delta relations, sum relation {}, {}",
                r.semiring,
                r.deltas_checked,
                r.sum_verdict,
                if r.ok() { "ok" } else { "FAILED" }
            );
            report_outcome(&r, r.ok(), summary)
        }
        Demo::Laurent { range } => {
            let r = laurent_check(ring, &laurent_samples(ring, *range), cli.budget)?;
            let summary = format!(
                "Laurent polynomials over {} on the loop: {} pairs, {}",
                r.semiring,
                r.pairs_checked,
                if r.ok() {
                    "additive and multiplicative"
                } else {
                    "FAILED"
                }
            );
            report_outcome(&r, r.ok(), summary)
        }
    }
}

fn run_oracle<S: Semiring>(lpa: &Lpa<S>, cli: &Cli, oracle: &Oracle) -> anyhow::Result<Outcome> {
    let g = lpa.graph();
    match oracle {
        Oracle::HsEnum { .. } => {
            let subsets: Vec<Vec<String>> = enumerate_hs_subsets(g, SUBSET_BOUND, cli.force)?
                .iter()
                .map(|h| h.names(g))
                .collect();
            let lines = subsets.iter().map(|h| format!("{{{}}}", h.join(", "))).collect();
            Ok(Outcome::new(json!({ "subsets": subsets }), lines))
        }
        Oracle::CycleEnum { .. } => {
            let cycles = enumerate_cycles(g, CYCLE_CAP)?;
            let names: Vec<Vec<String>> = cycles.iter().map(|c| c.edge_names(g)).collect();
            let lines = names.iter().map(|c| c.join(" ")).collect();
            Ok(Outcome::new(json!({ "cycles": names }), lines))
        }
        Oracle::EqClosure { exprs, random, .. } => {
            let mut diagnostics = Vec::new();
            let elems = parse_all(lpa, exprs, cli.warn_zero, &mut diagnostics)?;
            let mut lines = Vec::new();
            let mut result = json!({});
            if !elems.is_empty() {
                let [x, y] = elems.as_slice() else {
                    bail!("eq-closure compares exactly two expressions, got {}", elems.len());
                };
                let cx = expansion_closure(lpa, x, CLOSURE_CAP)?;
                let cy = expansion_closure(lpa, y, CLOSURE_CAP)?;
                let equal = !cx.is_disjoint(&cy);
                lines.push(format!("closure verdict: {}", if equal { "Equal" } else { "Distinct" }));
                result["equal"] = json!(equal);
                result["closure_sizes"] = json!([cx.len(), cy.len()]);
            }
            let mut failed = false;
            if *random > 0 {
                let mut r = rng(cli.seed);
                let one = lpa.ring().one();
                let mut disagreements = Vec::new();
                for _ in 0..*random {
                    let x = random_element(lpa, &mut r, 2, 2, false, |_| one.clone());
                    let y = random_element(lpa, &mut r, 2, 2, false, |_| one.clone());
                    let by_closure = !expansion_closure(lpa, &x, CLOSURE_CAP)?.is_disjoint(&expansion_closure(
                        lpa,
                        &y,
                        CLOSURE_CAP,
                    )?);
                    let verdict = eq_with(
                        lpa,
                        &x,
                        &y,
                        EqConfig {
                            budget: cli.budget,
                            ..EqConfig::default()
                        },
                    )?;
                    if verdict.is_equal() != by_closure || verdict.is_unknown() {
                        disagreements.push(format!("{} vs {}", format_element(lpa, &x), format_element(lpa, &y)));
                    }
                }
                lines.push(format!(
                    "random pairs: {random}, disagreements: {}",
                    disagreements.len()
                ));
                failed = !disagreements.is_empty();
                result["random_pairs"] = json!(random);
                result["disagreements"] = json!(disagreements);
            }
            let mut out = Outcome::new(result, lines);
            out.diagnostics = diagnostics;
            out.failed = failed;
            Ok(out)
        }
    }
}

fn graph_arg(c: &Command) -> Option<&PathBuf> {
    match c {
        Command::Analyze { graph }
        | Command::Decide { graph, .. }
        | Command::Eval { graph, .. }
        | Command::Reduce { graph, .. }
        | Command::Oracle(Oracle::HsEnum { graph } | Oracle::CycleEnum { graph } | Oracle::EqClosure { graph, .. }) => {
            Some(graph)
        }
        Command::Demo(_) => None,
    }
}

fn execute<S: Semiring>(cli: &Cli, ring: S) -> anyhow::Result<Outcome> {
    let graph = graph_arg(&cli.command).map(|p| read_graph(p)).transpose()?;
    let lpa = graph.map(|g| Lpa::new(g, ring.clone()));
    let lpa = || lpa.as_ref().expect("command takes a graph");
    match &cli.command {
        Command::Analyze { .. } => run_analyze(lpa().graph(), cli.force),
        Command::Decide { question, .. } => run_decide(lpa().graph(), &ring, *question),
        Command::Eval {
            exprs,
            check_eq,
            expect,
            ..
        } => run_eval(lpa(), cli, exprs, *check_eq, *expect),
        Command::Reduce { expr, .. } => run_reduce(lpa(), cli, expr),
        Command::Demo(d) => run_demo(&ring, cli, d),
        Command::Oracle(o) => run_oracle(lpa(), cli, o),
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match cli.semiring {
        SemiringKind::Boolean => execute(cli, Booleans::new()),
        SemiringKind::Nat => execute(cli, Naturals::new()),
        SemiringKind::Rational => execute(cli, Rationals::new()),
        SemiringKind::Tropical => execute(cli, Tropical::new()),
        SemiringKind::Gf(p) => execute(cli, PrimeField::new(p)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, lines, diagnostics, exit_code) = match dispatch(&cli) {
        Ok(o) => (o.result, o.lines, o.diagnostics, u8::from(o.failed)),
        Err(e) => (Value::Null, Vec::new(), vec![format!("error: {e:#}")], 2),
    };
    let report = Report {
        command: command_name(&cli.command),
        inputs: inputs(&cli),
        result,
        diagnostics,
        exit_code,
    };
    let mut stdout = io::stdout().lock();
    // A closed pipe downstream is not an error of ours.
    let _ = if cli.json {
        writeln!(
            stdout,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )
    } else {
        lines.iter().try_for_each(|l| writeln!(stdout, "{l}"))
    };
    if !cli.json {
        for d in &report.diagnostics {
            eprintln!("{d}");
        }
    }
    ExitCode::from(exit_code)
}
