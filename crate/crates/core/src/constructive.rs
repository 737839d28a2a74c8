//! Algorithms extracted from constructive arguments: reducing a real
//! element to a vertex, extracting a real element from an ideal generator,
//! and the classical identifications `L(A_n) ≅ M_n(S)`, the Leavitt
//! relations on the rose, and `L(loop) ≅ S[x, x⁻¹]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::analysis::{closed_simple_paths, cycle_has_exit, exitless_cycles, Cycle};
use crate::element::{Element, Lpa, Monomial, RealElement, TermKey};
use crate::equality::{eq, eq_with, sink_normal_form, EqConfig, EqVerdict};
use crate::error::AlgebraError;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::semiring::{classify, Semiring};

/// One stage of the vertex reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    /// Conjugation by `p*` on the left and `r(p)` on the right.
    PrefixSelection { prefix: Path },
    /// Conjugation by `(c*)^n` and `c^n`.
    CspPower { cycle: Path, power: usize },
    /// Conjugation by `z*` and `z` for `z = e_1 … e_{j-1} f`.
    ExitPath { path: Path },
}

impl ProofStep {
    pub fn tag(&self) -> &'static str {
        match self {
            ProofStep::PrefixSelection { .. } => "prefix-selection",
            ProofStep::CspPower { .. } => "csp-power",
            ProofStep::ExitPath { .. } => "exit-path",
        }
    }
}

/// `a · input · b` equals `target`.
#[derive(Clone, Debug)]
pub struct ReductionCertificate<E> {
    pub left: Element<E>,
    pub right: Element<E>,
    pub input: Element<E>,
    pub target: VertexId,
    pub trace: Vec<ProofStep>,
}

impl<E: Clone + Eq> ReductionCertificate<E> {
    pub fn verify<S: Semiring<Elem = E>>(&self, lpa: &Lpa<S>) -> Result<EqVerdict<E>, AlgebraError> {
        let lhs = lpa.product([&self.left, &self.input, &self.right])?;
        eq(lpa, &lhs, &lpa.vertex(self.target))
    }
}

fn require_semifield<S: Semiring>(ring: &S) -> Result<(), AlgebraError> {
    if classify(ring)?.is_semifield() {
        Ok(())
    } else {
        Err(AlgebraError::NotSemifield(ring.name()))
    }
}

/// The scalar `λ` when `x = λ·w` for a single vertex `w`.
fn as_scaled_vertex<E: Clone>(x: &Element<E>) -> Option<(E, VertexId)> {
    let mut terms = x.terms();
    let (k, c) = terms.next()?;
    (terms.next().is_none() && k.real.is_vertex() && k.ghost.is_vertex()).then(|| (c.clone(), k.range()))
}

/// Largest `m` with `c^m` a prefix of `p`.
fn cycle_power(c: &Path, p: &Path) -> usize {
    let mut m = 0;
    let mut rest = p.clone();
    while let Some(next) = c.strip_prefix(&rest) {
        m += 1;
        rest = next;
    }
    m
}

/// Finds `a`, `b` with `a·α·b` a vertex, for a nonzero real `α` over a
/// semifield on a graph where every cycle has an exit.
pub fn real_to_vertex<S: Semiring>(
    lpa: &Lpa<S>,
    alpha: &RealElement<S::Elem>,
) -> Result<ReductionCertificate<S::Elem>, AlgebraError> {
    let ring = lpa.ring();
    let g = lpa.graph();
    let input = alpha.as_element().clone();
    lpa.check(&input)?;
    require_semifield(ring)?;
    if input.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    if let Some(c) = exitless_cycles(g).first() {
        return Err(AlgebraError::ExitlessCycle(c.edge_names(g)));
    }

    // Term keys of a real element sort by (|p|, p), so the first is a
    // shortest term path and has no proper prefix among the others.
    let (key, _) = input.terms().next().expect("nonzero");
    let p = key.real.clone();
    let v = p.range();
    let mut left = lpa.ghost_path(&p);
    let mut right = lpa.vertex(v);
    let mut trace = vec![ProofStep::PrefixSelection { prefix: p.clone() }];
    let mut current = lpa.product([&left, &input, &right])?;

    if as_scaled_vertex(&current).is_none() {
        let c = closed_simple_paths(g, v, g.vertex_count())
            .into_iter()
            .next()
            .ok_or_else(|| AlgebraError::Invariant("closed terms without a closed simple path".into()))?;
        let n = current.keys().map(|k| cycle_power(&c, &k.real)).max().unwrap_or(0) + 1;
        let cn = c.power(n);
        left = lpa.mul(&lpa.ghost_path(&cn), &left)?;
        right = lpa.mul(&right, &lpa.path(&cn))?;
        current = lpa.product([&left, &input, &right])?;
        trace.push(ProofStep::CspPower {
            cycle: c.clone(),
            power: n,
        });

        if as_scaled_vertex(&current).is_none() {
            let cycle = Cycle::from_closed_path(g, c.edges());
            let mut z = None;
            for (j, &e) in c.edges().iter().enumerate() {
                if let Some(&f) = g.out_edges(g.source(e)).iter().find(|&&f| f != e) {
                    let mut edges: Vec<EdgeId> = c.edges()[..j].to_vec();
                    edges.push(f);
                    z = Some(g.path(v, &edges)?);
                    break;
                }
            }
            let z = match (z, cycle) {
                (Some(z), _) => z,
                (None, Some(cy)) if cycle_has_exit(g, &cy).is_none() => {
                    return Err(AlgebraError::ExitlessCycle(cy.edge_names(g)))
                }
                _ => return Err(AlgebraError::Invariant("closed simple path without an exit".into())),
            };
            left = lpa.mul(&lpa.ghost_path(&z), &left)?;
            right = lpa.mul(&right, &lpa.path(&z))?;
            current = lpa.product([&left, &input, &right])?;
            trace.push(ProofStep::ExitPath { path: z });
        }
    }

    let (lambda, target) = as_scaled_vertex(&current)
        .ok_or_else(|| AlgebraError::Invariant("reduction did not reach a scaled vertex".into()))?;
    let inv = ring
        .inv(&lambda)
        .ok_or_else(|| AlgebraError::NotSemifield(ring.name()))?;
    let cert = ReductionCertificate {
        left: lpa.scale(&inv, &left),
        right,
        input,
        target,
        trace,
    };
    if !cert.verify(lpa)?.is_equal() {
        return Err(AlgebraError::Invariant("reduction certificate failed to verify".into()));
    }
    Ok(cert)
}

/// Measure `(d; ghost lengths in descending order)`, compared
/// lexicographically.
pub fn extraction_measure<E: Clone>(x: &Element<E>) -> (usize, Vec<usize>) {
    let mut lens: Vec<usize> = x.keys().map(|k| k.ghost.len()).collect();
    lens.sort_unstable_by(|a, b| b.cmp(a));
    (x.len(), lens)
}

#[derive(Clone, Debug)]
pub struct Extraction<E> {
    pub real: RealElement<E>,
    pub trail: Vec<Monomial<E>>,
}

impl<E: Clone + Eq> Extraction<E> {
    /// `α · trail` reproduces the real element term for term.
    pub fn verify<S: Semiring<Elem = E>>(&self, lpa: &Lpa<S>, alpha: &Element<E>) -> Result<bool, AlgebraError> {
        let mut acc = alpha.clone();
        for m in &self.trail {
            acc = lpa.mul(&acc, &lpa.from_monomial(m))?;
        }
        Ok(acc == *self.real.as_element() && acc.is_real() && !acc.is_zero())
    }
}

fn provably_nonzero<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> Result<bool, AlgebraError> {
    if x.is_zero() {
        return Ok(false);
    }
    Ok(eq(lpa, x, &lpa.zero())?.is_distinct())
}

/// Right-multiplies `α` by edges, and by vertices when no edge works,
/// until no ghost factor is left. Each factor keeps the product provably
/// nonzero and strictly lowers [`extraction_measure`].
pub fn extract_real<S: Semiring>(lpa: &Lpa<S>, alpha: &Element<S::Elem>) -> Result<Extraction<S::Elem>, AlgebraError> {
    lpa.check(alpha)?;
    if alpha.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let g = lpa.graph();
    let one = lpa.ring().one();
    let mut current = alpha.clone();
    let mut trail = Vec::new();
    while !current.is_real() {
        let measure = extraction_measure(&current);
        let edge_keys = g.edges().map(|e| {
            let p = g.edge_path(e);
            TermKey {
                ghost: Path::vertex(p.range()),
                real: p,
            }
        });
        let candidates: Vec<TermKey> = edge_keys.chain(g.vertices().map(TermKey::vertex)).collect();
        let mut chosen = None;
        for key in candidates {
            let m = Monomial {
                coeff: one.clone(),
                key,
            };
            let next = lpa.mul(&current, &lpa.from_monomial(&m))?;
            if extraction_measure(&next) < measure && provably_nonzero(lpa, &next)? {
                chosen = Some((m, next));
                break;
            }
        }
        let (m, next) =
            chosen.ok_or_else(|| AlgebraError::Invariant("extraction measure failed to decrease".into()))?;
        trail.push(m);
        current = next;
    }
    Ok(Extraction {
        real: RealElement::new(current)?,
        trail,
    })
}

/// An `n × n` matrix over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOverS<E> {
    pub n: usize,
    pub entries: Vec<Vec<E>>,
}

impl<E: Clone + Eq> MatrixOverS<E> {
    pub fn zero<S: Semiring<Elem = E>>(ring: &S, n: usize) -> Self {
        MatrixOverS {
            n,
            entries: vec![vec![ring.zero(); n]; n],
        }
    }

    /// The elementary matrix `E_{i,j}`, zero-based.
    pub fn unit<S: Semiring<Elem = E>>(ring: &S, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(ring, n);
        m.entries[i][j] = ring.one();
        m
    }

    pub fn mul<S: Semiring<Elem = E>>(&self, ring: &S, rhs: &Self) -> Self {
        let mut out = Self::zero(ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = ring.zero();
                for k in 0..self.n {
                    acc = ring.add(&acc, &ring.mul(&self.entries[i][k], &rhs.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }
}

pub const MATRIX_ISO_CAP: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct MatrixIsoReport {
    pub n: usize,
    pub semiring: String,
    /// `(i, j, monomial)` with the monomial `p_i p_j*` printed by name.
    pub basis: Vec<(usize, usize, String)>,
    pub basis_is_bijective: bool,
    pub products_checked: usize,
    pub product_failures: Vec<String>,
    pub generator_failures: Vec<String>,
}

impl MatrixIsoReport {
    pub fn ok(&self) -> bool {
        self.basis_is_bijective && self.product_failures.is_empty() && self.generator_failures.is_empty()
    }
}

/// `φ(λ p q*) = λ E_{s(p), s(q)}` on sink normal forms over `A_n`.
fn line_phi<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> Result<MatrixOverS<S::Elem>, AlgebraError> {
    let ring = lpa.ring();
    let n = lpa.graph().vertex_count();
    let nf = sink_normal_form(lpa, x)?;
    let mut m = MatrixOverS::zero(ring, n);
    for (k, c) in nf.terms() {
        let (i, j) = (k.real.source().index(), k.ghost.source().index());
        m.entries[i][j] = ring.add(&m.entries[i][j], c);
    }
    Ok(m)
}

/// Checks `L_S(A_n) ≅ M_n(S)` on the full product table of the basis
/// `p_i p_j*`, where `p_i` runs from `v_i` to `v_n`.
pub fn line_graph_matrix_iso<S: Semiring>(n: usize, ring: &S) -> Result<MatrixIsoReport, AlgebraError> {
    if n == 0 || n > MATRIX_ISO_CAP {
        return Err(AlgebraError::CapExceeded {
            what: "matrix dimension",
            size: n,
            cap: MATRIX_ISO_CAP,
        });
    }
    let g = Graph::line(n);
    let lpa = Lpa::new(g.clone(), ring.clone());
    let sink = g.vertex(&format!("v{n}")).expect("line graph vertex");
    let to_sink: Vec<Path> = (1..=n)
        .map(|i| {
            let names: Vec<String> = (i..n).map(|k| format!("e{k}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            if refs.is_empty() {
                Ok(Path::vertex(sink))
            } else {
                g.path_of(&refs)
            }
        })
        .collect::<Result<_, _>>()?;
    // vertex ids are sorted by name, so map positions explicitly
    let pos = |v: VertexId| -> usize { g.vertex_name(v)[1..].parse::<usize>().expect("line graph vertex name") - 1 };
    let index_of = |m: &MatrixOverS<S::Elem>| -> MatrixOverS<S::Elem> {
        let mut out = MatrixOverS::zero(ring, n);
        for v in g.vertices() {
            for w in g.vertices() {
                out.entries[pos(v)][pos(w)] = m.entries[v.index()][w.index()].clone();
            }
        }
        out
    };

    let mut basis = Vec::new();
    let mut elems = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let x = lpa.term(ring.one(), TermKey::new(to_sink[i].clone(), to_sink[j].clone())?);
            let label = crate::expr::format_element(&lpa, &x);
            let image = index_of(&line_phi(&lpa, &x)?);
            let unit = MatrixOverS::unit(ring, n, i, j);
            seen.insert((i, j, image == unit && sink_normal_form(&lpa, &x)? == x));
            basis.push((i + 1, j + 1, label));
            elems.push(((i, j), x));
        }
    }
    let basis_is_bijective = seen.len() == n * n && seen.iter().all(|t| t.2);

    let mut product_failures = Vec::new();
    let mut products_checked = 0;
    for ((i, j), x) in &elems {
        for ((k, l), y) in &elems {
            products_checked += 1;
            let got = index_of(&line_phi(&lpa, &lpa.mul(x, y)?)?);
            let want = if j == k {
                MatrixOverS::unit(ring, n, *i, *l)
            } else {
                MatrixOverS::zero(ring, n)
            };
            let via_matrices = MatrixOverS::unit(ring, n, *i, *j).mul(ring, &MatrixOverS::unit(ring, n, *k, *l));
            if got != want || via_matrices != want {
                product_failures.push(format!("E{}{} * E{}{}", i + 1, j + 1, k + 1, l + 1));
            }
        }
    }

    let mut generator_failures = Vec::new();
    for v in g.vertices() {
        let i = pos(v);
        if index_of(&line_phi(&lpa, &lpa.vertex(v))?) != MatrixOverS::unit(ring, n, i, i) {
            generator_failures.push(g.vertex_name(v).to_string());
        }
    }
    for e in g.edges() {
        let (i, j) = (pos(g.source(e)), pos(g.range(e)));
        if index_of(&line_phi(&lpa, &lpa.edge(e))?) != MatrixOverS::unit(ring, n, i, j) {
            generator_failures.push(g.edge_name(e).to_string());
        }
        if index_of(&line_phi(&lpa, &lpa.ghost(e))?) != MatrixOverS::unit(ring, n, j, i) {
            generator_failures.push(format!("{}^*", g.edge_name(e)));
        }
    }

    Ok(MatrixIsoReport {
        n,
        semiring: ring.name(),
        basis,
        basis_is_bijective,
        products_checked,
        product_failures,
        generator_failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LeavittReport {
    pub n: usize,
    pub semiring: String,
    pub deltas_checked: usize,
    pub delta_failures: Vec<String>,
    pub sum_verdict: String,
}

impl LeavittReport {
    pub fn ok(&self) -> bool {
        self.delta_failures.is_empty() && self.sum_verdict == "Equal"
    }
}

/// With `y_i = e_i`, `x_i = e_i*` on the rose with `n` petals: checks
/// `x_i y_j = δ_ij v` and `Σ y_i x_i = v` with one expansion round.
pub fn rose_leavitt_check<S: Semiring>(n: usize, ring: &S) -> Result<LeavittReport, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyInput);
    }
    let g = Graph::rose(n);
    let lpa = Lpa::new(g.clone(), ring.clone());
    let v = g.vertex("v").expect("rose vertex");
    let mono = |x: Element<S::Elem>| x.monomials().next().expect("generator is a monomial");
    let mut delta_failures = Vec::new();
    let mut deltas_checked = 0;
    let mut sum = lpa.zero();
    for i in 1..=n {
        let ei = g.edge(&format!("e{i}")).expect("rose edge");
        for j in 1..=n {
            let ej = g.edge(&format!("e{j}")).expect("rose edge");
            deltas_checked += 1;
            let got = lpa.mono_mul(&mono(lpa.ghost(ei)), &mono(lpa.edge(ej)));
            let want = (i == j).then(|| mono(lpa.vertex(v)));
            if got != want {
                delta_failures.push(format!("x{i} y{j}"));
            }
        }
        sum = lpa.add(&sum, &lpa.mul(&lpa.edge(ei), &lpa.ghost(ei))?)?;
    }
    let verdict = eq_with(&lpa, &sum, &lpa.vertex(v), EqConfig::with_budget(1))?;
    Ok(LeavittReport {
        n,
        semiring: ring.name(),
        deltas_checked,
        delta_failures,
        sum_verdict: verdict.tag().to_string(),
    })
}

/// A Laurent polynomial `Σ f_k x^k` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laurent<E> {
    coeffs: BTreeMap<i64, E>,
}

impl<E: Clone + Eq> Laurent<E> {
    pub fn new<S: Semiring<Elem = E>>(ring: &S, coeffs: impl IntoIterator<Item = (i64, E)>) -> Self {
        let mut out = Laurent {
            coeffs: BTreeMap::new(),
        };
        for (k, c) in coeffs {
            out.add_term(ring, k, c);
        }
        out
    }

    pub fn monomial<S: Semiring<Elem = E>>(ring: &S, k: i64, c: E) -> Self {
        Self::new(ring, [(k, c)])
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, E> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term<S: Semiring<Elem = E>>(&mut self, ring: &S, k: i64, c: E) {
        let sum = match self.coeffs.get(&k) {
            Some(prev) => ring.add(prev, &c),
            None => c,
        };
        if ring.is_zero(&sum) {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn add<S: Semiring<Elem = E>>(&self, ring: &S, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(ring, *k, c.clone());
        }
        out
    }

    pub fn mul<S: Semiring<Elem = E>>(&self, ring: &S, rhs: &Self) -> Self {
        let mut out = Laurent {
            coeffs: BTreeMap::new(),
        };
        for (a, f) in &self.coeffs {
            for (b, g) in &rhs.coeffs {
                out.add_term(ring, a + b, ring.mul(f, g));
            }
        }
        out
    }
}

/// `x^k ↦ e^k`, `x^0 ↦ v`, `x^{-k} ↦ (e*)^k` on the single-loop graph.
pub fn loop_laurent_eval<S: Semiring>(lpa: &Lpa<S>, f: &Laurent<S::Elem>) -> Result<Element<S::Elem>, AlgebraError> {
    let g = lpa.graph();
    if g.vertex_count() != 1 || g.edge_count() != 1 {
        return Err(AlgebraError::Invariant(
            "Laurent evaluation needs the single-loop graph".into(),
        ));
    }
    let e = g.edges().next().expect("one edge");
    let v = g.vertices().next().expect("one vertex");
    if g.source(e) != v || g.range(e) != v {
        return Err(AlgebraError::Invariant(
            "Laurent evaluation needs the single-loop graph".into(),
        ));
    }
    let loop_path = g.edge_path(e);
    let pairs = f.coeffs.iter().map(|(&k, c)| {
        let p = loop_path.power(k.unsigned_abs() as usize);
        let key = if k >= 0 {
            TermKey {
                real: p,
                ghost: Path::vertex(v),
            }
        } else {
            TermKey {
                real: Path::vertex(v),
                ghost: p,
            }
        };
        (key, c.clone())
    });
    Ok(lpa.collect(pairs))
}

#[derive(Clone, Debug, Serialize)]
pub struct LaurentReport {
    pub semiring: String,
    pub pairs_checked: usize,
    pub additive_failures: Vec<String>,
    pub multiplicative_failures: Vec<String>,
    pub unknown: Vec<String>,
}

impl LaurentReport {
    pub fn ok(&self) -> bool {
        self.additive_failures.is_empty() && self.multiplicative_failures.is_empty() && self.unknown.is_empty()
    }
}

/// Sample Laurent polynomials with exponents in `[-range, range]`: every
/// `λ x^k` for the first two nonzero samples `λ`, and every `x^a + x^b`.
pub fn laurent_samples<S: Semiring>(ring: &S, range: i64) -> Vec<Laurent<S::Elem>> {
    let scalars: Vec<S::Elem> = ring
        .samples()
        .into_iter()
        .filter(|c| !ring.is_zero(c))
        .take(2)
        .collect();
    let mut out = Vec::new();
    for k in -range..=range {
        for c in &scalars {
            out.push(Laurent::monomial(ring, k, c.clone()));
        }
    }
    for a in -range..=range {
        for b in a + 1..=range {
            out.push(Laurent::new(ring, [(a, ring.one()), (b, ring.one())]));
        }
    }
    out
}

/// Checks that evaluation on the loop is additive and multiplicative on
/// all pairs of `samples`.
pub fn laurent_check<S: Semiring>(
    ring: &S,
    samples: &[Laurent<S::Elem>],
    budget: usize,
) -> Result<LaurentReport, AlgebraError> {
    let lpa = Lpa::new(Graph::single_loop(), ring.clone());
    let config = EqConfig::with_budget(budget);
    let images: Vec<Element<S::Elem>> = samples
        .iter()
        .map(|f| loop_laurent_eval(&lpa, f))
        .collect::<Result<_, _>>()?;
    let mut report = LaurentReport {
        semiring: ring.name(),
        pairs_checked: 0,
        additive_failures: Vec::new(),
        multiplicative_failures: Vec::new(),
        unknown: Vec::new(),
    };
    for (i, f) in samples.iter().enumerate() {
        for (j, g) in samples.iter().enumerate() {
            report.pairs_checked += 1;
            let label = format!("#{i} * #{j}");
            let sum = loop_laurent_eval(&lpa, &f.add(ring, g))?;
            match eq_with(&lpa, &lpa.add(&images[i], &images[j])?, &sum, config)? {
                EqVerdict::Equal(_) => {}
                EqVerdict::Distinct(_) => report.additive_failures.push(label.clone()),
                EqVerdict::Unknown { .. } => report.unknown.push(format!("{label} (sum)")),
            }
            let prod = loop_laurent_eval(&lpa, &f.mul(ring, g))?;
            match eq_with(&lpa, &lpa.mul(&images[i], &images[j])?, &prod, config)? {
                EqVerdict::Equal(_) => {}
                EqVerdict::Distinct(_) => report.multiplicative_failures.push(label),
                EqVerdict::Unknown { .. } => report.unknown.push(format!("{label} (product)")),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Booleans, Naturals, Rationals, Tropical};

    fn q(l: &Lpa<Rationals>, s: &str) -> num_rational::BigRational {
        l.ring().parse_scalar(s).unwrap()
    }

    #[test]
    fn vertex_reduces_to_itself() {
        let l = Lpa::new(Graph::line(2), Rationals::new());
        let v1 = l.graph().vertex("v1").unwrap();
        let cert = real_to_vertex(&l, &RealElement::new(l.vertex(v1)).unwrap()).unwrap();
        assert_eq!(cert.left, l.vertex(v1));
        assert_eq!(cert.right, l.vertex(v1));
        assert_eq!(cert.target, v1);
    }

    #[test]
    fn edge_reduces_to_range() {
        let l = Lpa::new(Graph::line(2), Rationals::new());
        let g = l.graph();
        let e1 = g.edge("e1").unwrap();
        let v2 = g.vertex("v2").unwrap();
        let cert = real_to_vertex(&l, &RealElement::new(l.edge(e1)).unwrap()).unwrap();
        assert_eq!(cert.left, l.ghost(e1));
        assert_eq!(cert.right, l.vertex(v2));
        assert_eq!(cert.target, v2);
    }

    #[test]
    fn rose_reduction_uses_exit() {
        let l = Lpa::new(Graph::rose(2), Rationals::new());
        let g = l.graph();
        let v = g.vertex("v").unwrap();
        let alpha = l.add(&l.vertex(v), &l.edge(g.edge("e1").unwrap())).unwrap();
        let cert = real_to_vertex(&l, &RealElement::new(alpha).unwrap()).unwrap();
        let tags: Vec<_> = cert.trace.iter().map(ProofStep::tag).collect();
        assert_eq!(tags, ["prefix-selection", "csp-power", "exit-path"]);
        assert_eq!(
            cert.trace[2],
            ProofStep::ExitPath {
                path: g.path_of(&["e2"]).unwrap()
            }
        );
        assert_eq!(cert.target, v);
        assert!(cert.verify(&l).unwrap().is_equal());
    }

    #[test]
    fn reduction_preconditions() {
        let l = Lpa::new(Graph::single_loop(), Rationals::new());
        let v = l.vertex(l.graph().vertex("v").unwrap());
        assert!(matches!(
            real_to_vertex(&l, &RealElement::new(v).unwrap()),
            Err(AlgebraError::ExitlessCycle(_))
        ));
        let n = Lpa::new(Graph::line(2), Naturals::new());
        let v = n.vertex(n.graph().vertex("v1").unwrap());
        assert!(matches!(
            real_to_vertex(&n, &RealElement::new(v).unwrap()),
            Err(AlgebraError::NotSemifield(_))
        ));
        let r = Lpa::new(Graph::line(2), Rationals::new());
        assert!(matches!(
            real_to_vertex(&r, &RealElement::new(r.zero()).unwrap()),
            Err(AlgebraError::ZeroElement)
        ));
    }

    #[test]
    fn extraction_examples() {
        let l = Lpa::new(Graph::line(2), Rationals::new());
        let g = l.graph();
        let e1 = g.edge("e1").unwrap();
        let x = l.ghost(e1);
        let out = extract_real(&l, &x).unwrap();
        assert_eq!(out.real.as_element(), &l.vertex(g.vertex("v2").unwrap()));
        assert_eq!(out.trail.len(), 1);
        assert_eq!(
            out.trail[0].key,
            TermKey::new(g.edge_path(e1), Path::vertex(g.range(e1))).unwrap()
        );
        assert!(out.verify(&l, &x).unwrap());

        let real = l.edge(e1);
        let out = extract_real(&l, &real).unwrap();
        assert!(out.trail.is_empty());
        assert_eq!(out.real.as_element(), &real);
        assert!(matches!(extract_real(&l, &l.zero()), Err(AlgebraError::ZeroElement)));
    }

    #[test]
    fn extraction_of_ghost_path() {
        let l = Lpa::new(Graph::line(3), Rationals::new());
        let g = l.graph();
        let pq = g.path_of(&["e1", "e2"]).unwrap();
        let x = l.scale(&q(&l, "3"), &l.mul(&l.path(&pq), &l.ghost_path(&pq)).unwrap());
        let out = extract_real(&l, &x).unwrap();
        assert_eq!(out.real.as_element(), &l.scale(&q(&l, "3"), &l.path(&pq)));
        assert!(out.verify(&l, &x).unwrap());
    }

    #[test]
    fn matrix_iso_small() {
        let r = line_graph_matrix_iso(1, &Rationals::new()).unwrap();
        assert!(r.ok());
        assert_eq!(r.basis, vec![(1, 1, "v1".to_string())]);
        let r = line_graph_matrix_iso(2, &Naturals::new()).unwrap();
        assert!(r.ok());
        assert_eq!(r.products_checked, 16);
        let r = line_graph_matrix_iso(3, &Booleans::new()).unwrap();
        assert!(r.ok());
        assert_eq!(r.basis.len(), 9);
        assert_eq!(r.products_checked, 81);
        assert!(line_graph_matrix_iso(7, &Booleans::new()).is_err());
    }

    #[test]
    fn leavitt_small() {
        for n in 1..=3 {
            let r = rose_leavitt_check(n, &Booleans::new()).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.deltas_checked, n * n);
        }
    }

    #[test]
    fn laurent_eval() {
        let ring = Naturals::new();
        let l = Lpa::new(Graph::single_loop(), ring);
        let g = l.graph();
        let e = g.edge("e").unwrap();
        let one = Laurent::monomial(&ring, 0, ring.one());
        assert_eq!(loop_laurent_eval(&l, &one).unwrap(), l.vertex(g.vertex("v").unwrap()));
        let f = Laurent::new(&ring, [(1, ring.one()), (-1, ring.one())]);
        assert_eq!(
            loop_laurent_eval(&l, &f).unwrap(),
            l.add(&l.edge(e), &l.ghost(e)).unwrap()
        );
    }

    #[test]
    fn laurent_homomorphism_on_small_samples() {
        let ring = Tropical::new();
        let samples = laurent_samples(&ring, 2);
        let r = laurent_check(&ring, &samples, 8).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
