//! Equality modulo the full congruence, including `v = Σ_{s(e)=v} e e*`.
//!
//! On acyclic graphs every term can be pushed to a sink range, which gives
//! a canonical form. On graphs with cycles the comparison is a bounded
//! search: both sides are expanded level by level, and failing that the
//! representation in [`crate::repr`] is searched for a separating vector.

use std::collections::BTreeMap;
use std::fmt;

use crate::element::{Element, Lpa, TermKey};
use crate::error::AlgebraError;
use crate::graph::VertexId;
use crate::repr::{separate, BasisVector, Representation, Separation};
use crate::semiring::Semiring;

pub const DEFAULT_BUDGET: usize = 6;
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqConfig {
    /// Expansion rounds on graphs with cycles.
    pub budget: usize,
    /// Operator applications explored by the separation search.
    pub depth: usize,
}

impl Default for EqConfig {
    fn default() -> Self {
        EqConfig {
            budget: DEFAULT_BUDGET,
            depth: DEFAULT_DEPTH,
        }
    }
}

impl EqConfig {
    pub fn with_budget(budget: usize) -> Self {
        EqConfig {
            budget,
            ..Self::default()
        }
    }
}

/// The terms expanded on each side, in order. Replaying them turns both
/// inputs into the same element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqualityTrace {
    pub left: Vec<TermKey>,
    pub right: Vec<TermKey>,
}

impl EqualityTrace {
    pub fn steps(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Re-applies both expansion sequences and compares the results.
    pub fn replay<S: Semiring>(
        &self,
        lpa: &Lpa<S>,
        x: &Element<S::Elem>,
        y: &Element<S::Elem>,
    ) -> Result<bool, AlgebraError> {
        let a = replay_side(lpa, x, &self.left)?;
        let b = replay_side(lpa, y, &self.right)?;
        Ok(a == b)
    }
}

fn replay_side<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    steps: &[TermKey],
) -> Result<Element<S::Elem>, AlgebraError> {
    lpa.check(x)?;
    let mut terms = x.clone().into_terms();
    for key in steps {
        if !terms.contains_key(key) {
            return Err(AlgebraError::Invariant(format!(
                "trace expands a term that is not present: {key:?}"
            )));
        }
        expand_in_place(lpa, &mut terms, key)?;
    }
    Ok(Element::from_terms(x.graph_id(), terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict<E> {
    Equal(EqualityTrace),
    Distinct(Separation<E>),
    Unknown { budget: usize, depth: usize },
}

impl<E> EqVerdict<E> {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqVerdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EqVerdict::Distinct(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, EqVerdict::Unknown { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            EqVerdict::Equal(_) => "Equal",
            EqVerdict::Distinct(_) => "Distinct",
            EqVerdict::Unknown { .. } => "Unknown",
        }
    }
}

impl<E> fmt::Display for EqVerdict<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The children `(p e, q e)` of a term at a regular range.
pub fn expand_term<S: Semiring>(lpa: &Lpa<S>, key: &TermKey) -> Result<Vec<TermKey>, AlgebraError> {
    let g = lpa.graph();
    let v = key.range();
    if g.is_sink(v) {
        return Err(AlgebraError::SinkExpansion(g.vertex_name(v).to_string()));
    }
    Ok(g.out_edges(v)
        .iter()
        .map(|&e| TermKey {
            real: g.extend(&key.real, e).expect("edge leaves the range"),
            ghost: g.extend(&key.ghost, e).expect("edge leaves the range"),
        })
        .collect())
}

fn expand_in_place<S: Semiring>(
    lpa: &Lpa<S>,
    terms: &mut BTreeMap<TermKey, S::Elem>,
    key: &TermKey,
) -> Result<(), AlgebraError> {
    let children = expand_term(lpa, key)?;
    let Some(c) = terms.remove(key) else {
        return Ok(());
    };
    let ring = lpa.ring();
    for child in children {
        let sum = match terms.get(&child) {
            Some(prev) => ring.add(prev, &c),
            None => c.clone(),
        };
        if ring.is_zero(&sum) {
            terms.remove(&child);
        } else {
            terms.insert(child, sum);
        }
    }
    Ok(())
}

/// Replaces every term with range `v` by its CK2 expansion.
pub fn ck2_expand<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    v: VertexId,
) -> Result<Element<S::Elem>, AlgebraError> {
    lpa.check(x)?;
    let g = lpa.graph();
    if g.is_sink(v) {
        return Err(AlgebraError::SinkExpansion(g.vertex_name(v).to_string()));
    }
    let mut pairs = Vec::new();
    for (key, c) in x.terms() {
        if key.range() == v {
            for child in expand_term(lpa, key)? {
                pairs.push((child, c.clone()));
            }
        } else {
            pairs.push((key.clone(), c.clone()));
        }
    }
    Ok(lpa.collect(pairs))
}

/// Pushes every term to a sink range; the result is canonical.
pub fn sink_normal_form<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> Result<Element<S::Elem>, AlgebraError> {
    sink_normal_form_traced(lpa, x).map(|(nf, _)| nf)
}

/// [`sink_normal_form`] together with the expanded terms in order.
pub fn sink_normal_form_traced<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
) -> Result<(Element<S::Elem>, Vec<TermKey>), AlgebraError> {
    lpa.check(x)?;
    let g = lpa.graph();
    if !g.is_acyclic() {
        return Err(AlgebraError::CyclicGraph);
    }
    let mut terms = x.clone().into_terms();
    let mut trace = Vec::new();
    loop {
        let pending: Vec<TermKey> = terms.keys().filter(|k| g.is_regular(k.range())).cloned().collect();
        if pending.is_empty() {
            break;
        }
        for key in pending {
            if terms.contains_key(&key) {
                expand_in_place(lpa, &mut terms, &key)?;
                trace.push(key);
            }
        }
    }
    Ok((Element::from_terms(x.graph_id(), terms), trace))
}

/// [`eq_with`] at the default budget and depth.
pub fn eq<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    y: &Element<S::Elem>,
) -> Result<EqVerdict<S::Elem>, AlgebraError> {
    eq_with(lpa, x, y, EqConfig::default())
}

pub fn eq_with<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    y: &Element<S::Elem>,
    config: EqConfig,
) -> Result<EqVerdict<S::Elem>, AlgebraError> {
    lpa.check(x)?;
    lpa.check(y)?;
    if x == y {
        return Ok(EqVerdict::Equal(EqualityTrace::default()));
    }
    if lpa.graph().is_acyclic() {
        eq_acyclic(lpa, x, y)
    } else {
        eq_bounded(lpa, x, y, config)
    }
}

fn eq_acyclic<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    y: &Element<S::Elem>,
) -> Result<EqVerdict<S::Elem>, AlgebraError> {
    let (nx, tx) = sink_normal_form_traced(lpa, x)?;
    let (ny, ty) = sink_normal_form_traced(lpa, y)?;
    if nx == ny {
        return Ok(EqVerdict::Equal(EqualityTrace { left: tx, right: ty }));
    }
    // δ at the range sink pushed through q separates the first differing
    // term: sink-range ghosts are pairwise non-prefix.
    let key = first_difference(&nx, &ny).expect("normal forms differ");
    let rep = Representation::new(lpa.graph());
    let mut b = BasisVector::seed(key.range());
    for &e in key.ghost.edges().iter().rev() {
        b = rep.real_step(e, b)?.expect("ghost path composes");
    }
    let left = crate::repr::apply_with(&rep, lpa.ring(), x, &b)?;
    let right = crate::repr::apply_with(&rep, lpa.ring(), y, &b)?;
    if left != right {
        return Ok(EqVerdict::Distinct(Separation { vector: b, left, right }));
    }
    match separate(lpa, x, y, DEFAULT_DEPTH)? {
        Some(sep) => Ok(EqVerdict::Distinct(sep)),
        None => Err(AlgebraError::Invariant(
            "distinct sink normal forms were not separated".into(),
        )),
    }
}

fn first_difference<E: Clone + Eq>(x: &Element<E>, y: &Element<E>) -> Option<TermKey> {
    let mut keys: Vec<&TermKey> = x.keys().chain(y.keys()).collect();
    keys.sort();
    keys.into_iter().find(|k| x.coefficient(k) != y.coefficient(k)).cloned()
}

fn eq_bounded<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    y: &Element<S::Elem>,
    config: EqConfig,
) -> Result<EqVerdict<S::Elem>, AlgebraError> {
    if let Some(sep) = separate(lpa, x, y, 0)? {
        return Ok(EqVerdict::Distinct(sep));
    }
    let g = lpa.graph();
    let mut sides = [x.clone().into_terms(), y.clone().into_terms()];
    let mut trace = EqualityTrace::default();
    for _ in 0..config.budget {
        let level = sides
            .iter()
            .flat_map(|t| t.keys())
            .filter(|k| g.is_regular(k.range()))
            .map(|k| k.ghost.len())
            .min();
        let Some(level) = level else { break };
        for (side, steps) in sides.iter_mut().zip([&mut trace.left, &mut trace.right]) {
            let pending: Vec<TermKey> = side
                .keys()
                .filter(|k| k.ghost.len() == level && g.is_regular(k.range()))
                .cloned()
                .collect();
            for key in pending {
                if side.contains_key(&key) {
                    expand_in_place(lpa, side, &key)?;
                    steps.push(key);
                }
            }
        }
        if sides[0] == sides[1] {
            return Ok(EqVerdict::Equal(trace));
        }
    }
    match separate(lpa, x, y, config.depth)? {
        Some(sep) => Ok(EqVerdict::Distinct(sep)),
        None => Ok(EqVerdict::Unknown {
            budget: config.budget,
            depth: config.depth,
        }),
    }
}
