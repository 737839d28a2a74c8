//! Seeded generators for graphs and elements.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, Lpa, TermKey};
use crate::graph::{Graph, Path};
use crate::semiring::Semiring;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A graph with `1..=max_vertices` vertices and `0..=max_edges` edges,
/// loops and parallel edges allowed.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..m)
        .map(|j| {
            (
                format!("e{j}"),
                names[rng.gen_range(0..n)].clone(),
                names[rng.gen_range(0..n)].clone(),
            )
        })
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    Graph::from_parts(&vs, &es).expect("generated graph is valid")
}

/// A walk of length at most `max_len` from a random vertex.
pub fn random_path<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Path {
    let vs: Vec<_> = g.vertices().collect();
    let mut p = Path::vertex(*vs.choose(rng).expect("nonempty graph"));
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let Some(&e) = g.out_edges(p.range()).choose(rng) else {
            break;
        };
        p = g.extend(&p, e).expect("out edge composes");
    }
    p
}

/// A walk of length at most `max_len` ending at `end`.
pub fn random_path_into<R: Rng>(rng: &mut R, g: &Graph, end: crate::graph::VertexId, max_len: usize) -> Path {
    let mut edges = Vec::new();
    let mut at = end;
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let Some(&e) = g.in_edges(at).choose(rng) else { break };
        edges.push(e);
        at = g.source(e);
    }
    edges.reverse();
    g.path(at, &edges).expect("backward walk composes")
}

/// A sum of `1..=max_terms` monomials with coefficients from `coeff`.
/// Ghost parts are trivial when `real_only` holds.
pub fn random_element<S: Semiring, R: Rng>(
    lpa: &Lpa<S>,
    rng: &mut R,
    max_terms: usize,
    max_len: usize,
    real_only: bool,
    mut coeff: impl FnMut(&mut R) -> S::Elem,
) -> Element<S::Elem> {
    let g = lpa.graph();
    let n = rng.gen_range(1..=max_terms.max(1));
    let pairs: Vec<(TermKey, S::Elem)> = (0..n)
        .map(|_| {
            let real = random_path(rng, g, max_len);
            let ghost = if real_only {
                Path::vertex(real.range())
            } else {
                random_path_into(rng, g, real.range(), max_len)
            };
            (TermKey { real, ghost }, coeff(rng))
        })
        .collect();
    lpa.collect(pairs)
}
