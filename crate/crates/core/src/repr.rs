//! A concrete representation of `L_S(Γ)` by operators on a free
//! S-semimodule, used to prove elements distinct.
//!
//! Every vertex space `A_v` has basis `ℤ × Tags`. For a regular `v` with
//! out-edges `e_0, …, e_{m-1}` the splitting `A_v = ⊕ A_{e_j}` puts
//! `(k, t)` into slot `j = k mod m`, and `T_{e_j}` sends `(k, t) ∈ A_{r(e_j)}`
//! to `(m·k + j, t)`. On a cycle without exits one edge per cycle adds 1
//! instead, which realises the shift `δ_(k,i) ↦ δ_(k+1,i)`. All relations of
//! the algebra hold for these operators, so unequal images prove `x ≠ y`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::analysis::exitless_cycles;
use crate::element::{Element, Lpa, TermKey};
use crate::error::AlgebraError;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::semiring::Semiring;

/// Upper bound on the number of vectors visited by [`separate`].
pub const SEPARATION_CAP: usize = 100_000;

/// The basis vector `δ_(k, tag)` of `A_vertex`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisVector {
    pub vertex: VertexId,
    pub k: i128,
    pub tag: VertexId,
}

impl BasisVector {
    pub fn seed(v: VertexId) -> Self {
        BasisVector {
            vertex: v,
            k: 0,
            tag: v,
        }
    }
}

/// A finite S-linear combination of basis vectors.
pub type Combination<E> = BTreeMap<BasisVector, E>;

/// The operator data derived from a graph.
#[derive(Clone, Debug)]
pub struct Representation<'g> {
    graph: &'g Graph,
    shift: Vec<i128>,
    position: Vec<i128>,
}

impl<'g> Representation<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let mut shift = vec![0; graph.edge_count()];
        for c in exitless_cycles(graph) {
            shift[c.edges()[0].index()] = 1;
        }
        let mut position = vec![0; graph.edge_count()];
        for v in graph.vertices() {
            for (j, e) in graph.out_edges(v).iter().enumerate() {
                position[e.index()] = j as i128;
            }
        }
        Representation { graph, shift, position }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn check(&self, b: &BasisVector) -> Result<(), AlgebraError> {
        if !self.graph.contains_vertex(b.vertex) || !self.graph.contains_vertex(b.tag) {
            return Err(AlgebraError::MalformedBasisVector(format!("{b:?}")));
        }
        Ok(())
    }

    /// `T_e`: from `A_{r(e)}` into the `e`-slot of `A_{s(e)}`.
    pub fn real_step(&self, e: EdgeId, b: BasisVector) -> Result<Option<BasisVector>, AlgebraError> {
        if b.vertex != self.graph.range(e) {
            return Ok(None);
        }
        let s = self.graph.source(e);
        let m = self.graph.out_degree(s) as i128;
        let k =
            b.k.checked_mul(m)
                .and_then(|k| k.checked_add(self.position[e.index()] + self.shift[e.index()]))
                .ok_or(AlgebraError::IndexOverflow)?;
        Ok(Some(BasisVector {
            vertex: s,
            k,
            tag: b.tag,
        }))
    }

    /// `T_{e*}`: inverse of `T_e` on the `e`-slot, zero elsewhere.
    pub fn ghost_step(&self, e: EdgeId, b: BasisVector) -> Result<Option<BasisVector>, AlgebraError> {
        if b.vertex != self.graph.source(e) {
            return Ok(None);
        }
        let m = self.graph.out_degree(b.vertex) as i128;
        let k =
            b.k.checked_sub(self.shift[e.index()])
                .ok_or(AlgebraError::IndexOverflow)?;
        if k.rem_euclid(m) != self.position[e.index()] {
            return Ok(None);
        }
        Ok(Some(BasisVector {
            vertex: self.graph.range(e),
            k: k.div_euclid(m),
            tag: b.tag,
        }))
    }

    /// `T_p T_{q*}` applied to `b`.
    pub fn apply_key(&self, key: &TermKey, b: BasisVector) -> Result<Option<BasisVector>, AlgebraError> {
        if b.vertex != key.ghost.source() {
            return Ok(None);
        }
        let mut cur = b;
        for &f in key.ghost.edges() {
            match self.ghost_step(f, cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        for &e in key.real.edges().iter().rev() {
            match self.real_step(e, cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// The first `depth` edges of the nested slot containing `b`.
    pub fn slot(&self, b: &BasisVector, depth: usize) -> Path {
        let mut edges = Vec::new();
        let mut cur = *b;
        while edges.len() < depth && self.graph.is_regular(cur.vertex) {
            let next = self
                .graph
                .out_edges(cur.vertex)
                .iter()
                .find_map(|&e| self.ghost_step(e, cur).ok().flatten().map(|n| (e, n)));
            let (e, n) = next.expect("the slots of a regular vertex cover its space");
            edges.push(e);
            cur = n;
        }
        self.graph.path(b.vertex, &edges).expect("slot edges compose")
    }
}

/// `x` applied to `b` as an S-combination of basis vectors.
pub fn rep_apply<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    b: &BasisVector,
) -> Result<Combination<S::Elem>, AlgebraError> {
    lpa.check(x)?;
    let rep = Representation::new(lpa.graph());
    apply_with(&rep, lpa.ring(), x, b)
}

pub(crate) fn apply_with<S: Semiring>(
    rep: &Representation<'_>,
    ring: &S,
    x: &Element<S::Elem>,
    b: &BasisVector,
) -> Result<Combination<S::Elem>, AlgebraError> {
    rep.check(b)?;
    let mut out: Combination<S::Elem> = BTreeMap::new();
    for (key, c) in x.terms() {
        if let Some(image) = rep.apply_key(key, *b)? {
            let sum = match out.get(&image) {
                Some(prev) => ring.add(prev, c),
                None => c.clone(),
            };
            if ring.is_zero(&sum) {
                out.remove(&image);
            } else {
                out.insert(image, sum);
            }
        }
    }
    Ok(out)
}

/// Evidence that two elements differ: a vector and both images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation<E> {
    pub vector: BasisVector,
    pub left: Combination<E>,
    pub right: Combination<E>,
}

impl<E: Clone + Eq> Separation<E> {
    /// Recomputes both images from scratch.
    pub fn verify<S: Semiring<Elem = E>>(
        &self,
        lpa: &Lpa<S>,
        x: &Element<E>,
        y: &Element<E>,
    ) -> Result<bool, AlgebraError> {
        let lx = rep_apply(lpa, x, &self.vector)?;
        let ly = rep_apply(lpa, y, &self.vector)?;
        Ok(lx != ly && lx == self.left && ly == self.right)
    }
}

/// Searches vectors reachable from the seeds `δ_(0, v)` under `depth`
/// applications of the edge and ghost operators for one where `x` and `y`
/// act differently.
pub fn separate<S: Semiring>(
    lpa: &Lpa<S>,
    x: &Element<S::Elem>,
    y: &Element<S::Elem>,
    depth: usize,
) -> Result<Option<Separation<S::Elem>>, AlgebraError> {
    lpa.check(x)?;
    lpa.check(y)?;
    let g = lpa.graph();
    let rep = Representation::new(g);
    let ring = lpa.ring();
    let test = |b: &BasisVector| -> Result<Option<Separation<S::Elem>>, AlgebraError> {
        let left = apply_with(&rep, ring, x, b)?;
        let right = apply_with(&rep, ring, y, b)?;
        Ok((left != right).then_some(Separation {
            vector: *b,
            left,
            right,
        }))
    };

    let mut seen: BTreeSet<BasisVector> = BTreeSet::new();
    let mut queue: VecDeque<(BasisVector, usize)> = VecDeque::new();
    for v in g.vertices() {
        let b = BasisVector::seed(v);
        seen.insert(b);
        queue.push_back((b, 0));
    }
    while let Some((b, d)) = queue.pop_front() {
        if let Some(sep) = test(&b)? {
            return Ok(Some(sep));
        }
        if d == depth {
            continue;
        }
        for e in g.edges() {
            for next in [rep.real_step(e, b), rep.ghost_step(e, b)] {
                let Ok(Some(n)) = next else { continue };
                if seen.len() >= SEPARATION_CAP {
                    break;
                }
                if seen.insert(n) {
                    queue.push_back((n, d + 1));
                }
            }
        }
    }
    Ok(None)
}

/// A basis vector with its slot spelled out, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct VectorReport {
    pub vertex: String,
    pub k: String,
    pub tag: String,
    pub slot: Vec<String>,
}

impl VectorReport {
    pub fn new(g: &Graph, b: &BasisVector) -> Self {
        let rep = Representation::new(g);
        let slot = rep.slot(b, 4);
        VectorReport {
            vertex: g.vertex_name(b.vertex).to_string(),
            k: b.k.to_string(),
            tag: g.vertex_name(b.tag).to_string(),
            slot: slot.edges().iter().map(|&e| g.edge_name(e).to_string()).collect(),
        }
    }
}
