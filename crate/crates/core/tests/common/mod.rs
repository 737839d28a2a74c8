//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use lpa_core::analysis::VertexSet;
use lpa_core::{Element, Graph, Lpa, Semiring, TermKey, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// One CK2 step on the term at `key`: `p q* = Σ_{s(e) = r(p)} p e (q e)*`.
pub fn expand<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>, key: &TermKey) -> Element<S::Elem> {
    let g = lpa.graph();
    let c = x.coefficient(key).expect("key is a term").clone();
    let mut pairs: Vec<(TermKey, S::Elem)> = x
        .terms()
        .filter(|(k, _)| *k != key)
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect();
    for &e in g.out_edges(key.range()) {
        let real = g.extend(&key.real, e).expect("edge leaves the range");
        let ghost = g.extend(&key.ghost, e).expect("edge leaves the range");
        pairs.push((TermKey { real, ghost }, c.clone()));
    }
    lpa.collect(pairs)
}

/// All elements reachable from `x` by expanding terms at regular vertices.
pub fn reach<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> BTreeSet<Element<S::Elem>> {
    let g = lpa.graph();
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(cur) = queue.pop_front() {
        for key in cur.keys() {
            if g.out_degree(key.range()) == 0 {
                continue;
            }
            let next = expand(lpa, &cur, key);
            if seen.insert(next.clone()) {
                assert!(seen.len() < 200_000, "closure blew up");
                queue.push_back(next);
            }
        }
    }
    seen
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Class labels for `elems` under the congruence generated by CK2
/// expansion, computed by merging overlapping reach sets.
pub fn ck2_classes<S: Semiring>(lpa: &Lpa<S>, elems: &[Element<S::Elem>]) -> Vec<usize> {
    let mut index: BTreeMap<Element<S::Elem>, usize> = BTreeMap::new();
    let mut uf = UnionFind(Vec::new());
    let mut id = |x: &Element<S::Elem>, uf: &mut UnionFind| {
        *index.entry(x.clone()).or_insert_with(|| {
            uf.0.push(uf.0.len());
            uf.0.len() - 1
        })
    };
    let roots: Vec<usize> = elems
        .iter()
        .map(|x| {
            let i = id(x, &mut uf);
            for y in reach(lpa, x) {
                let j = id(&y, &mut uf);
                uf.union(i, j);
            }
            i
        })
        .collect();
    roots.into_iter().map(|i| uf.find(i)).collect()
}

pub fn hereditary(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    g.edges().all(|e| !h.contains(&g.source(e)) || h.contains(&g.range(e)))
}

pub fn saturated(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    g.vertices().all(|v| {
        let out = g.out_edges(v);
        h.contains(&v) || out.is_empty() || !out.iter().all(|&e| h.contains(&g.range(e)))
    })
}

/// Every hereditary saturated subset, by enumerating all `2^|V|` subsets.
pub fn all_hs_subsets(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    (0u32..1 << vs.len())
        .map(|mask| {
            vs.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .filter(|h| hereditary(g, h) && saturated(g, h))
        .collect()
}

/// Intersection of all hereditary saturated sets containing `x`.
pub fn hs_closure_oracle(all: &[BTreeSet<VertexId>], g: &Graph, x: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    all.iter()
        .filter(|h| x.is_subset(h))
        .fold(g.vertices().collect(), |acc: BTreeSet<VertexId>, h| {
            acc.intersection(h).copied().collect()
        })
}

pub fn to_set(h: &VertexSet) -> BTreeSet<VertexId> {
    h.iter().collect()
}

pub fn from_set(h: &BTreeSet<VertexId>) -> VertexSet {
    h.iter().copied().collect()
}

/// The same graph with vertex and edge names permuted.
pub fn relabel<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut vnames: Vec<String> = (0..g.vertex_count()).map(|i| format!("n{i}")).collect();
    let mut enames: Vec<String> = (0..g.edge_count()).map(|i| format!("a{i}")).collect();
    vnames.shuffle(rng);
    enames.shuffle(rng);
    let vmap: BTreeMap<VertexId, &str> = g.vertices().zip(vnames.iter().map(String::as_str)).collect();
    let edges: Vec<(&str, &str, &str)> = g
        .edges()
        .zip(enames.iter())
        .map(|(e, n)| (n.as_str(), vmap[&g.source(e)], vmap[&g.range(e)]))
        .collect();
    let vs: Vec<&str> = vnames.iter().map(String::as_str).collect();
    Graph::from_parts(&vs, &edges).expect("relabelled graph is valid")
}

/// `V ∪ E ∪ E*` as elements.
pub fn generators<S: Semiring>(lpa: &Lpa<S>) -> Vec<Element<S::Elem>> {
    let g = lpa.graph();
    let mut out: Vec<_> = g.vertices().map(|v| lpa.vertex(v)).collect();
    out.extend(g.edges().map(|e| lpa.edge(e)));
    out.extend(g.edges().map(|e| lpa.ghost(e)));
    out
}

/// Generators and their nonzero pairwise products, deduplicated.
pub fn short_monomials<S: Semiring>(lpa: &Lpa<S>) -> Vec<Element<S::Elem>> {
    let gens = generators(lpa);
    let mut out: BTreeSet<Element<S::Elem>> = gens.iter().cloned().collect();
    for a in &gens {
        for b in &gens {
            let ab = lpa.mul(a, b).unwrap();
            if !ab.is_zero() {
                out.insert(ab);
            }
        }
    }
    out.into_iter().collect()
}

/// `c·m` and `c1·m1 + c2·m2` over the given monomials and scalars.
pub fn two_term_combinations<S: Semiring>(
    lpa: &Lpa<S>,
    monomials: &[Element<S::Elem>],
    scalars: &[S::Elem],
) -> Vec<Element<S::Elem>> {
    let mut out = BTreeSet::new();
    for (i, m1) in monomials.iter().enumerate() {
        for c1 in scalars {
            let a = lpa.scale(c1, m1);
            out.insert(a.clone());
            for m2 in &monomials[i + 1..] {
                for c2 in scalars {
                    out.insert(lpa.add(&a, &lpa.scale(c2, m2)).unwrap());
                }
            }
        }
    }
    out.into_iter().collect()
}
