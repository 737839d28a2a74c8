//! Brute-force equality on acyclic graphs: two elements are equal iff the
//! sets of elements reachable from them by expanding single terms meet.

use std::collections::{BTreeSet, VecDeque};

use crate::element::{Element, Lpa};
use crate::equality::expand_term;
use crate::error::AlgebraError;
use crate::semiring::Semiring;

pub const CLOSURE_CAP: usize = 50_000;

/// Every element reachable from `x` by expanding one term at a time.
pub fn expansion_closure<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    cap: usize,
) -> Result<BTreeSet<Element<S::Elem>>, AlgebraError> {
    lpa.check(x)?;
    if !lpa.graph().is_acyclic() {
        return Err(AlgebraError::CyclicGraph);
    }
    let g = lpa.graph();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([x.clone()]);
    seen.insert(x.clone());
    while let Some(cur) = queue.pop_front() {
        for (key, c) in cur.terms() {
            if !g.is_regular(key.range()) {
                continue;
            }
            let rest = cur
                .terms()
                .filter(|(k, _)| *k != key)
                .map(|(k, c)| (k.clone(), c.clone()));
            let children = expand_term(lpa, key)?.into_iter().map(|k| (k, c.clone()));
            let next = lpa.collect(rest.chain(children));
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(AlgebraError::CapExceeded {
                        what: "expansion closure",
                        size: seen.len(),
                        cap,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Equality by intersecting expansion closures.
pub fn closure_eq<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>, y: &Element<S::Elem>) -> Result<bool, AlgebraError> {
    let cx = expansion_closure(lpa, x, CLOSURE_CAP)?;
    let cy = expansion_closure(lpa, y, CLOSURE_CAP)?;
    Ok(!cx.is_disjoint(&cy))
}
