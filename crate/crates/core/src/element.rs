//! Elements of `L_S(Γ)` as finite sums of normal-form monomials `λ p q*`.
//!
//! Only relations (1)–(3) are applied here; they orient into a terminating
//! rewrite and leave every product as a single monomial or zero. The CK2
//! relation `v = Σ e e*` is handled by [`crate::equality`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::graph::{EdgeId, Graph, GraphId, Path, VertexId};
use crate::semiring::Semiring;

/// The `(p, q)` pair of a monomial `λ p q*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TermKey {
    pub real: Path,
    pub ghost: Path,
}

impl TermKey {
    pub fn new(real: Path, ghost: Path) -> Result<Self, AlgebraError> {
        if real.range() != ghost.range() {
            return Err(AlgebraError::RangeMismatch);
        }
        Ok(TermKey { real, ghost })
    }

    pub fn vertex(v: VertexId) -> Self {
        TermKey {
            real: Path::vertex(v),
            ghost: Path::vertex(v),
        }
    }

    /// Common range `r(p) = r(q)`.
    pub fn range(&self) -> VertexId {
        self.real.range()
    }

    pub fn swapped(&self) -> TermKey {
        TermKey {
            real: self.ghost.clone(),
            ghost: self.real.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.ghost.is_vertex()
    }

    /// Resolves `q1* p2` per the four cases for path products and
    /// reassembles `(p1 q1*)(p2 q2*)`.
    pub fn product(&self, rhs: &TermKey) -> Option<TermKey> {
        if let Some(rest) = self.ghost.strip_prefix(&rhs.real) {
            // p2 = q1 · rest
            let real = self.real.concat(&rest).expect("r(p1) = r(q1) = s(rest)");
            Some(TermKey {
                real,
                ghost: rhs.ghost.clone(),
            })
        } else if let Some(rest) = rhs.real.strip_prefix(&self.ghost) {
            // q1 = p2 · rest
            let ghost = rhs.ghost.concat(&rest).expect("r(q2) = r(p2) = s(rest)");
            Some(TermKey {
                real: self.real.clone(),
                ghost,
            })
        } else {
            None
        }
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.real
            .len()
            .cmp(&other.real.len())
            .then_with(|| self.real.cmp(&other.real))
            .then_with(|| self.ghost.len().cmp(&other.ghost.len()))
            .then_with(|| self.ghost.cmp(&other.ghost))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `coeff · real · ghost*` with nonzero `coeff`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<E> {
    pub coeff: E,
    pub key: TermKey,
}

impl<E> Monomial<E> {
    pub fn real(&self) -> &Path {
        &self.key.real
    }

    pub fn ghost(&self) -> &Path {
        &self.key.ghost
    }
}

/// A finite S-linear combination of monomials over one graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Element<E> {
    graph: GraphId,
    terms: BTreeMap<TermKey, E>,
}

impl<E: Clone> Element<E> {
    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &E)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &TermKey> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &TermKey) -> Option<&E> {
        self.terms.get(key)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial<E>> + '_ {
        self.terms.iter().map(|(k, c)| Monomial {
            coeff: c.clone(),
            key: k.clone(),
        })
    }

    /// No term carries a ghost edge.
    pub fn is_real(&self) -> bool {
        self.terms.keys().all(TermKey::is_real)
    }

    /// Largest ghost length, 0 for the zero element.
    pub fn ghost_degree(&self) -> usize {
        self.terms.keys().map(|k| k.ghost.len()).max().unwrap_or(0)
    }

    pub(crate) fn from_terms(graph: GraphId, terms: BTreeMap<TermKey, E>) -> Self {
        Element { graph, terms }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<TermKey, E> {
        self.terms
    }
}

/// An element known to have no ghost factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealElement<E>(Element<E>);

impl<E: Clone> RealElement<E> {
    pub fn new(x: Element<E>) -> Result<Self, AlgebraError> {
        if x.is_real() {
            Ok(RealElement(x))
        } else {
            Err(AlgebraError::NotReal)
        }
    }

    pub fn as_element(&self) -> &Element<E> {
        &self.0
    }

    pub fn into_element(self) -> Element<E> {
        self.0
    }
}

/// The algebra `L_S(Γ)`: a graph together with a coefficient semiring.
#[derive(Clone, Debug)]
pub struct Lpa<S: Semiring> {
    graph: Arc<Graph>,
    ring: S,
}

impl<S: Semiring> Lpa<S> {
    pub fn new(graph: impl Into<Arc<Graph>>, ring: S) -> Self {
        Lpa {
            graph: graph.into(),
            ring,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        self.graph.clone()
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn check(&self, x: &Element<S::Elem>) -> Result<(), AlgebraError> {
        if x.graph == self.graph.id() {
            Ok(())
        } else {
            Err(AlgebraError::CrossGraph)
        }
    }

    pub fn zero(&self) -> Element<S::Elem> {
        Element {
            graph: self.graph.id(),
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · key`, pruned to zero when `coeff = 0`.
    pub fn term(&self, coeff: S::Elem, key: TermKey) -> Element<S::Elem> {
        let mut x = self.zero();
        if !self.ring.is_zero(&coeff) {
            x.terms.insert(key, coeff);
        }
        x
    }

    pub fn monomial(&self, coeff: S::Elem, real: Path, ghost: Path) -> Result<Element<S::Elem>, AlgebraError> {
        if !real.is_valid_in(&self.graph) || !ghost.is_valid_in(&self.graph) {
            return Err(AlgebraError::CrossGraph);
        }
        Ok(self.term(coeff, TermKey::new(real, ghost)?))
    }

    pub fn from_monomial(&self, m: &Monomial<S::Elem>) -> Element<S::Elem> {
        self.term(m.coeff.clone(), m.key.clone())
    }

    pub fn vertex(&self, v: VertexId) -> Element<S::Elem> {
        self.term(self.ring.one(), TermKey::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Element<S::Elem> {
        let p = self.graph.edge_path(e);
        let r = Path::vertex(p.range());
        self.term(self.ring.one(), TermKey { real: p, ghost: r })
    }

    pub fn ghost(&self, e: EdgeId) -> Element<S::Elem> {
        let p = self.graph.edge_path(e);
        let r = Path::vertex(p.range());
        self.term(self.ring.one(), TermKey { real: r, ghost: p })
    }

    /// The real path `p` as an element.
    pub fn path(&self, p: &Path) -> Element<S::Elem> {
        self.term(
            self.ring.one(),
            TermKey {
                real: p.clone(),
                ghost: Path::vertex(p.range()),
            },
        )
    }

    /// `p*` as an element.
    pub fn ghost_path(&self, p: &Path) -> Element<S::Elem> {
        self.term(
            self.ring.one(),
            TermKey {
                real: Path::vertex(p.range()),
                ghost: p.clone(),
            },
        )
    }

    /// Sum of the given vertices.
    pub fn vertex_sum(&self, vs: impl IntoIterator<Item = VertexId>) -> Element<S::Elem> {
        let mut x = self.zero();
        for v in vs {
            self.add_term(&mut x.terms, TermKey::vertex(v), self.ring.one());
        }
        x
    }

    /// The unit `Σ_{v ∈ V} v` of a finite graph.
    pub fn unit(&self) -> Element<S::Elem> {
        self.vertex_sum(self.graph.vertices())
    }

    fn add_term(&self, terms: &mut BTreeMap<TermKey, S::Elem>, key: TermKey, coeff: S::Elem) {
        use std::collections::btree_map::Entry;
        if self.ring.is_zero(&coeff) {
            return;
        }
        match terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = self.ring.add(slot.get(), &coeff);
                if self.ring.is_zero(&sum) {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Builds an element from `(key, coeff)` pairs, merging equal keys.
    pub fn collect(&self, pairs: impl IntoIterator<Item = (TermKey, S::Elem)>) -> Element<S::Elem> {
        let mut x = self.zero();
        for (k, c) in pairs {
            self.add_term(&mut x.terms, k, c);
        }
        x
    }

    /// `(λ1 p1 q1*)(λ2 p2 q2*)` as a single monomial or zero.
    pub fn mono_mul(&self, a: &Monomial<S::Elem>, b: &Monomial<S::Elem>) -> Option<Monomial<S::Elem>> {
        let key = a.key.product(&b.key)?;
        let coeff = self.ring.mul(&a.coeff, &b.coeff);
        (!self.ring.is_zero(&coeff)).then_some(Monomial { coeff, key })
    }

    pub fn add(&self, x: &Element<S::Elem>, y: &Element<S::Elem>) -> Result<Element<S::Elem>, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        for (k, c) in &y.terms {
            self.add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, x: &Element<S::Elem>, y: &Element<S::Elem>) -> Result<Element<S::Elem>, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (ka, ca) in &x.terms {
            for (kb, cb) in &y.terms {
                if let Some(key) = ka.product(kb) {
                    self.add_term(&mut out.terms, key, self.ring.mul(ca, cb));
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product of a nonempty list.
    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a Element<S::Elem>>,
    ) -> Result<Element<S::Elem>, AlgebraError> {
        let mut it = factors.into_iter();
        let first = it.next().ok_or(AlgebraError::EmptyInput)?;
        let mut acc = first.clone();
        self.check(&acc)?;
        for f in it {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn sum<'a>(
        &self,
        xs: impl IntoIterator<Item = &'a Element<S::Elem>>,
    ) -> Result<Element<S::Elem>, AlgebraError> {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, lambda: &S::Elem, x: &Element<S::Elem>) -> Element<S::Elem> {
        self.collect(x.terms.iter().map(|(k, c)| (k.clone(), self.ring.mul(lambda, c))))
    }

    /// `(λ p q*)* = λ q p*` termwise.
    pub fn involute(&self, x: &Element<S::Elem>) -> Element<S::Elem> {
        Element {
            graph: x.graph,
            terms: x.terms.iter().map(|(k, c)| (k.swapped(), c.clone())).collect(),
        }
    }

    pub fn is_real(&self, x: &Element<S::Elem>) -> bool {
        x.is_real()
    }

    /// A local unit for `xs`: the sum of every vertex that occurs as a
    /// source or range of a term.
    pub fn local_unit(&self, xs: &[Element<S::Elem>]) -> Result<Element<S::Elem>, AlgebraError> {
        if xs.is_empty() {
            return Err(AlgebraError::EmptyInput);
        }
        let mut vs = BTreeSet::new();
        for x in xs {
            self.check(x)?;
            for k in x.terms.keys() {
                vs.insert(k.real.source());
                vs.insert(k.ghost.source());
                vs.insert(k.range());
            }
        }
        Ok(self.vertex_sum(vs))
    }

    /// `x^n` for `n ≥ 1`; `x^0` is the unit.
    pub fn pow(&self, x: &Element<S::Elem>, n: usize) -> Result<Element<S::Elem>, AlgebraError> {
        let mut acc = self.unit();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Booleans, Naturals, Rationals};
    use num_bigint::BigUint;

    fn a2() -> Lpa<Naturals> {
        Lpa::new(Graph::line(2), Naturals::new())
    }

    #[test]
    fn ghost_times_edge_is_range() {
        let l = a2();
        let g = l.graph();
        let e1 = g.edge("e1").unwrap();
        let v2 = g.vertex("v2").unwrap();
        assert_eq!(l.mul(&l.ghost(e1), &l.edge(e1)).unwrap(), l.vertex(v2));
    }

    #[test]
    fn orthogonal_edges_vanish() {
        let l = Lpa::new(Graph::rose(2), Naturals::new());
        let g = l.graph();
        let (e1, e2) = (g.edge("e1").unwrap(), g.edge("e2").unwrap());
        assert!(l.mul(&l.ghost(e1), &l.edge(e2)).unwrap().is_zero());
        // (e1*)(e1 + e2) = v
        let s = l.add(&l.edge(e1), &l.edge(e2)).unwrap();
        assert_eq!(l.mul(&l.ghost(e1), &s).unwrap(), l.vertex(g.vertex("v").unwrap()));
    }

    #[test]
    fn ghost_prefix_cancels() {
        let l = Lpa::new(Graph::line(3), Naturals::new());
        let g = l.graph();
        let p = g.path_of(&["e1"]).unwrap();
        let pq = g.path_of(&["e1", "e2"]).unwrap();
        let q = g.path_of(&["e2"]).unwrap();
        assert_eq!(l.mul(&l.ghost_path(&p), &l.path(&pq)).unwrap(), l.path(&q));
        // the other case: (pq)* p = q*
        assert_eq!(l.mul(&l.ghost_path(&pq), &l.path(&p)).unwrap(), l.ghost_path(&q));
    }

    #[test]
    fn vertex_idempotents() {
        let l = a2();
        let g = l.graph();
        let (v1, v2) = (g.vertex("v1").unwrap(), g.vertex("v2").unwrap());
        assert_eq!(l.mul(&l.vertex(v1), &l.vertex(v1)).unwrap(), l.vertex(v1));
        assert!(l.mul(&l.vertex(v1), &l.vertex(v2)).unwrap().is_zero());
        let s = l.vertex_sum([v1, v2]);
        assert_eq!(l.mul(&s, &s).unwrap(), s);
    }

    #[test]
    fn addition() {
        let l = a2();
        let v1 = l.vertex(l.graph().vertex("v1").unwrap());
        assert_eq!(l.add(&v1, &l.zero()).unwrap(), v1);
        let twice = l.add(&v1, &v1).unwrap();
        assert_eq!(
            twice.coefficient(&TermKey::vertex(l.graph().vertex("v1").unwrap())),
            Some(&BigUint::from(2u32))
        );
        let b = Lpa::new(Graph::line(2), Booleans::new());
        let v = b.vertex(b.graph().vertex("v1").unwrap());
        assert_eq!(b.add(&v, &v).unwrap(), v);
        assert!(l.mul(&v1, &l.zero()).unwrap().is_zero());
    }

    #[test]
    fn involution() {
        let l = a2();
        let e1 = l.graph().edge("e1").unwrap();
        assert_eq!(l.involute(&l.edge(e1)), l.ghost(e1));
        let v = l.vertex(l.graph().vertex("v1").unwrap());
        assert_eq!(l.involute(&v), v);
    }

    #[test]
    fn local_units() {
        let l = a2();
        let g = l.graph();
        let e1 = l.edge(g.edge("e1").unwrap());
        let f = l.local_unit(std::slice::from_ref(&e1)).unwrap();
        assert_eq!(f, l.vertex_sum(g.vertices()));
        assert_eq!(l.mul(&f, &e1).unwrap(), e1);
        assert_eq!(l.mul(&e1, &f).unwrap(), e1);
        let v = l.vertex(g.vertex("v1").unwrap());
        assert_eq!(l.local_unit(std::slice::from_ref(&v)).unwrap(), v);
        assert!(matches!(l.local_unit(&[]), Err(AlgebraError::EmptyInput)));
    }

    #[test]
    fn realness() {
        let l = Lpa::new(Graph::line(3), Rationals::new());
        let g = l.graph();
        let e1 = g.path_of(&["e1"]).unwrap();
        let e1e2 = g.path_of(&["e1", "e2"]).unwrap();
        let two = l.ring().parse_scalar("2").unwrap();
        let x = l.add(&l.path(&e1), &l.scale(&two, &l.path(&e1e2))).unwrap();
        assert!(x.is_real());
        assert!(!l.ghost_path(&e1).is_real());
        assert!(l.vertex(g.vertex("v1").unwrap()).is_real());
        assert!(RealElement::new(l.ghost_path(&e1)).is_err());
    }

    #[test]
    fn cross_graph_is_rejected() {
        let a = a2();
        let b = Lpa::new(Graph::line(3), Naturals::new());
        let x = a.vertex(a.graph().vertex("v1").unwrap());
        let y = b.vertex(b.graph().vertex("v1").unwrap());
        assert_eq!(a.mul(&x, &y), Err(AlgebraError::CrossGraph));
        assert_eq!(a.add(&x, &y), Err(AlgebraError::CrossGraph));
    }

    #[test]
    fn source_and_range_absorb_edges() {
        let l = Lpa::new(Graph::rose(2), Naturals::new());
        let g = l.graph().clone();
        for e in g.edges() {
            let x = l.edge(e);
            assert_eq!(l.mul(&l.vertex(g.source(e)), &x).unwrap(), x);
            assert_eq!(l.mul(&x, &l.vertex(g.range(e))).unwrap(), x);
        }
    }
}
