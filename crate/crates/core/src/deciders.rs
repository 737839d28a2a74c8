//! Ideal- and congruence-simpleness of `L_S(Γ)` for finite graphs, decided
//! from the graph conditions and the coefficient classification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    cycle_has_exit, exitless_cycles, hs_closure, is_hereditary, is_saturated, nontrivial_singleton_closures, Cycle,
    VertexSet,
};
use crate::element::{Element, Lpa, TermKey};
use crate::equality::eq;
use crate::error::AlgebraError;
use crate::graph::{Graph, VertexId};
use crate::semiring::{classify, Classification, Semiring, SemiringError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    Ideal,
    Congruence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    OutOfScope,
}

/// Evidence for a negative answer, stored by name so it can be re-checked
/// against a freshly loaded graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "data")]
pub enum Witness {
    NontrivialHereditarySaturated { subset: Vec<String> },
    CycleWithoutExit { base: String, edges: Vec<String> },
    CoefficientObstruction { classification: Classification },
}

impl Witness {
    fn hs(g: &Graph, h: &VertexSet) -> Self {
        Witness::NontrivialHereditarySaturated { subset: h.names(g) }
    }

    fn cycle(g: &Graph, c: &Cycle) -> Self {
        Witness::CycleWithoutExit {
            base: g.vertex_name(c.base()).to_string(),
            edges: c.edge_names(g),
        }
    }

    /// Re-checks the witness from scratch against `g` and `ring`.
    pub fn verify<S: Semiring>(&self, g: &Graph, ring: &S) -> bool {
        match self {
            Witness::NontrivialHereditarySaturated { subset } => {
                let Some(h) = subset.iter().map(|n| g.vertex(n)).collect::<Option<VertexSet>>() else {
                    return false;
                };
                h.len() == subset.len()
                    && !h.is_empty()
                    && h.len() < g.vertex_count()
                    && is_hereditary(g, &h)
                    && is_saturated(g, &h)
            }
            Witness::CycleWithoutExit { base, edges } => {
                let Some(ids) = edges.iter().map(|n| g.edge(n)).collect::<Option<Vec<_>>>() else {
                    return false;
                };
                match Cycle::from_closed_path(g, &ids) {
                    Some(c) => g.vertex(base) == Some(g.source(ids[0])) && cycle_has_exit(g, &c).is_none(),
                    None => false,
                }
            }
            Witness::CoefficientObstruction { classification } => {
                classify(ring).ok() == Some(*classification)
                    && !matches!(classification, Classification::Field | Classification::Boolean)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplenessVerdict {
    pub question: Question,
    pub answer: Answer,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl SimplenessVerdict {
    fn from_witnesses(question: Question, witnesses: Vec<Witness>, notes: Vec<String>) -> Self {
        let answer = if witnesses.is_empty() { Answer::Yes } else { Answer::No };
        SimplenessVerdict {
            question,
            answer,
            witnesses,
            notes,
        }
    }

    fn out_of_scope(question: Question, note: String) -> Self {
        SimplenessVerdict {
            question,
            answer: Answer::OutOfScope,
            witnesses: Vec::new(),
            notes: vec![note],
        }
    }
}

fn graph_witnesses(g: &Graph) -> Vec<Witness> {
    let mut out: Vec<Witness> = nontrivial_singleton_closures(g)
        .iter()
        .map(|h| Witness::hs(g, h))
        .collect();
    out.extend(exitless_cycles(g).iter().map(|c| Witness::cycle(g, c)));
    out
}

/// Yes iff `S` is a semifield, `V` has no nontrivial hereditary saturated
/// subset and every cycle has an exit. Non-semifield coefficients are out of
/// scope.
pub fn decide_ideal_simple<S: Semiring>(g: &Graph, ring: &S) -> Result<SimplenessVerdict, SemiringError> {
    let class = classify(ring)?;
    if g.vertex_count() == 0 {
        return Ok(SimplenessVerdict::out_of_scope(
            Question::Ideal,
            "the graph has no vertices".into(),
        ));
    }
    if !class.is_semifield() {
        return Ok(SimplenessVerdict::out_of_scope(
            Question::Ideal,
            format!(
                "{} is not a semifield; ideal-simpleness over general commutative semirings is an open problem",
                ring.name()
            ),
        ));
    }
    Ok(SimplenessVerdict::from_witnesses(
        Question::Ideal,
        graph_witnesses(g),
        Vec::new(),
    ))
}

/// Yes iff `S` is a field or the Boolean semifield and the two graph
/// conditions of the ideal case hold.
pub fn decide_congruence_simple<S: Semiring>(g: &Graph, ring: &S) -> Result<SimplenessVerdict, SemiringError> {
    let class = classify(ring)?;
    if g.vertex_count() == 0 {
        return Ok(SimplenessVerdict::out_of_scope(
            Question::Congruence,
            "the graph has no vertices".into(),
        ));
    }
    let mut witnesses = Vec::new();
    let mut notes = Vec::new();
    if !matches!(class, Classification::Field | Classification::Boolean) {
        witnesses.push(Witness::CoefficientObstruction { classification: class });
        notes.push(format!("{} is neither a field nor the Boolean semifield", ring.name()));
    }
    witnesses.extend(graph_witnesses(g));
    Ok(SimplenessVerdict::from_witnesses(
        Question::Congruence,
        witnesses,
        notes,
    ))
}

/// One product `a·g·b` found equal to a vertex.
#[derive(Clone, Debug)]
pub struct VertexHit<E> {
    pub vertex: String,
    pub generator: usize,
    pub left: Element<E>,
    pub right: Element<E>,
}

#[derive(Clone, Debug)]
pub struct IdealProbe<E> {
    pub hits: Vec<VertexHit<E>>,
    pub found: Vec<String>,
    pub closure: Vec<String>,
    pub closure_is_hereditary_saturated: bool,
}

/// Searches `a·g·b` over monomials `a = p q*`, `b = p' q'*` with paths of
/// length at most `max_len` for products equal to a vertex, then closes the
/// vertices found.
pub fn check_ideal_meets_vertices<S: Semiring>(
    lpa: &Lpa<S>,
    generators: &[Element<S::Elem>],
    max_len: usize,
) -> Result<IdealProbe<S::Elem>, AlgebraError> {
    if generators.is_empty() {
        return Err(AlgebraError::EmptyInput);
    }
    for x in generators {
        lpa.check(x)?;
        if x.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
    }
    let g = lpa.graph();
    let paths = g.paths_up_to(max_len);
    let mut monomials = Vec::new();
    for p in &paths {
        for q in paths.iter().filter(|q| q.range() == p.range()) {
            monomials.push(lpa.term(lpa.ring().one(), TermKey::new(p.clone(), q.clone())?));
        }
    }
    let vertices: Vec<_> = g.vertices().collect();
    let mut found = BTreeSet::new();
    let mut hits = Vec::new();
    for (i, x) in generators.iter().enumerate() {
        for a in &monomials {
            let ax = lpa.mul(a, x)?;
            if ax.is_zero() {
                continue;
            }
            for b in &monomials {
                let axb = lpa.mul(&ax, b)?;
                if axb.is_zero() {
                    continue;
                }
                for &v in &vertices {
                    if found.contains(&v) || !touches(&axb, v) {
                        continue;
                    }
                    if eq(lpa, &axb, &lpa.vertex(v))?.is_equal() {
                        found.insert(v);
                        hits.push(VertexHit {
                            vertex: g.vertex_name(v).to_string(),
                            generator: i,
                            left: a.clone(),
                            right: b.clone(),
                        });
                    }
                }
            }
        }
    }
    let set: VertexSet = found.iter().copied().collect();
    let closure = hs_closure(g, &set);
    Ok(IdealProbe {
        hits,
        found: set.names(g),
        closure_is_hereditary_saturated: is_hereditary(g, &closure) && is_saturated(g, &closure),
        closure: closure.names(g),
    })
}

fn touches<E: Clone>(x: &Element<E>, v: VertexId) -> bool {
    x.keys().all(|k| k.real.source() == v && k.ghost.source() == v)
}
