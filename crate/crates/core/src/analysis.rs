//! Hereditary and saturated vertex sets, cycles and their exits.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};

/// Default bound on `|V|` for brute-force subset enumeration.
pub const SUBSET_BOUND: usize = 20;
/// Default cap on the number of enumerated cycles.
pub const CYCLE_CAP: usize = 100_000;

/// A set of vertices of some graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn all(g: &Graph) -> Self {
        VertexSet(g.vertices().collect())
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet([v].into_iter().collect())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.iter().map(|v| g.vertex_name(v).to_string()).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// `s(e) ∈ H ⇒ r(e) ∈ H` for every edge.
pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    g.edges().all(|e| !h.contains(g.source(e)) || h.contains(g.range(e)))
}

/// Every regular vertex whose edges all land in `H` belongs to `H`.
pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    g.vertices()
        .all(|v| g.is_sink(v) || h.contains(v) || !g.out_edges(v).iter().all(|&e| h.contains(g.range(e))))
}

/// Smallest hereditary and saturated superset of `x`.
pub fn hs_closure(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut inside = vec![false; g.vertex_count()];
    for v in x.iter() {
        inside[v.index()] = true;
    }
    loop {
        // hereditary propagation
        let mut stack: Vec<VertexId> = g.vertices().filter(|v| inside[v.index()]).collect();
        while let Some(v) = stack.pop() {
            for &e in g.out_edges(v) {
                let w = g.range(e);
                if !inside[w.index()] {
                    inside[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        // saturation sweep
        let mut grew = false;
        for v in g.vertices() {
            if !inside[v.index()] && g.is_regular(v) && g.out_edges(v).iter().all(|&e| inside[g.range(e).index()]) {
                inside[v.index()] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    g.vertices().filter(|v| inside[v.index()]).collect()
}

/// All hereditary and saturated subsets, ordered by size then
/// lexicographically. Refuses graphs above `bound` vertices unless forced.
pub fn enumerate_hs_subsets(g: &Graph, bound: usize, force: bool) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > bound && !force {
        return Err(GraphError::TooLarge {
            what: "subset enumeration",
            size: n,
            bound,
        });
    }
    assert!(n < 64, "subset enumeration needs fewer than 64 vertices");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let h: VertexSet = g.vertices().filter(|v| mask >> v.index() & 1 == 1).collect();
        if is_hereditary(g, &h) && is_saturated(g, &h) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// True iff `∅` and `V` are the only hereditary saturated subsets.
pub fn only_trivial_hs(g: &Graph) -> bool {
    nontrivial_singleton_closures(g).is_empty()
}

/// Distinct closures `hs_closure({v}) ≠ V`, each a nontrivial hereditary
/// saturated set.
pub fn nontrivial_singleton_closures(g: &Graph) -> Vec<VertexSet> {
    let all = g.vertex_count();
    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    for v in g.vertices() {
        let c = hs_closure(g, &VertexSet::singleton(v));
        if c.len() != all {
            found.insert(c);
        }
    }
    let mut out: Vec<VertexSet> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A cycle, canonically rotated to start at its least vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    base: VertexId,
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Canonical cycle from a closed path with distinct source vertices.
    pub fn from_closed_path(g: &Graph, edges: &[EdgeId]) -> Option<Cycle> {
        if edges.is_empty() {
            return None;
        }
        let n = edges.len();
        for i in 0..n {
            if g.range(edges[i]) != g.source(edges[(i + 1) % n]) {
                return None;
            }
        }
        let sources: BTreeSet<VertexId> = edges.iter().map(|&e| g.source(e)).collect();
        if sources.len() != n {
            return None;
        }
        let (pos, _) = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| g.source(e))
            .expect("nonempty");
        let mut rotated = edges[pos..].to_vec();
        rotated.extend_from_slice(&edges[..pos]);
        Some(Cycle {
            base: g.source(rotated[0]),
            edges: rotated,
        })
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = VertexId> + 'a {
        self.edges.iter().map(|&e| g.source(e))
    }

    pub fn as_path(&self, g: &Graph) -> Path {
        g.path(self.base, &self.edges).expect("cycle is a path")
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_name(e).to_string()).collect()
    }

    /// Re-checks the cycle invariants against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&e| g.contains_edge(e)) && Cycle::from_closed_path(g, &self.edges).as_ref() == Some(self)
    }
}

/// Every cycle up to rotation, each once, based at its least vertex.
pub fn enumerate_cycles(g: &Graph, cap: usize) -> Result<Vec<Cycle>, GraphError> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut stack: Vec<EdgeId> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &Graph,
        base: VertexId,
        at: VertexId,
        on_path: &mut [bool],
        stack: &mut Vec<EdgeId>,
        out: &mut Vec<Cycle>,
        cap: usize,
    ) -> Result<(), GraphError> {
        for &e in g.out_edges(at) {
            let w = g.range(e);
            if w == base {
                if out.len() >= cap {
                    return Err(GraphError::CycleCap(cap));
                }
                stack.push(e);
                out.push(Cycle {
                    base,
                    edges: stack.clone(),
                });
                stack.pop();
            } else if w > base && !on_path[w.index()] {
                on_path[w.index()] = true;
                stack.push(e);
                dfs(g, base, w, on_path, stack, out, cap)?;
                stack.pop();
                on_path[w.index()] = false;
            }
        }
        Ok(())
    }

    for base in g.vertices() {
        on_path[base.index()] = true;
        dfs(g, base, base, &mut on_path, &mut stack, &mut out, cap)?;
        on_path[base.index()] = false;
    }
    out.sort();
    Ok(out)
}

/// Some edge leaving the cycle other than the cycle's own edge there.
pub fn cycle_has_exit(g: &Graph, c: &Cycle) -> Option<EdgeId> {
    c.edges
        .iter()
        .find_map(|&e| g.out_edges(g.source(e)).iter().copied().find(|&f| f != e))
}

/// Exitless cycles found by the out-degree scan: a cycle has no exit iff
/// every vertex on it has out-degree exactly one.
pub fn exitless_cycles(g: &Graph) -> Vec<Cycle> {
    let mut found: BTreeSet<Cycle> = BTreeSet::new();
    for v in g.vertices() {
        if g.out_degree(v) != 1 {
            continue;
        }
        let mut edges = Vec::new();
        let mut at = v;
        for _ in 0..g.vertex_count() {
            if g.out_degree(at) != 1 {
                break;
            }
            let e = g.out_edges(at)[0];
            edges.push(e);
            at = g.range(e);
            if at == v {
                if let Some(c) = Cycle::from_closed_path(g, &edges) {
                    found.insert(c);
                }
                break;
            }
        }
    }
    found.into_iter().collect()
}

/// `(true, None)` when every cycle has an exit, otherwise a counterexample.
pub fn every_cycle_has_exit(g: &Graph) -> (bool, Option<Cycle>) {
    match exitless_cycles(g).into_iter().next() {
        Some(c) => (false, Some(c)),
        None => (true, None),
    }
}

/// Same question answered by enumerating every cycle.
pub fn every_cycle_has_exit_by_enumeration(g: &Graph, cap: usize) -> Result<(bool, Option<Cycle>), GraphError> {
    let bad = enumerate_cycles(g, cap)?
        .into_iter()
        .find(|c| cycle_has_exit(g, c).is_none());
    Ok((bad.is_none(), bad))
}

/// Closed paths at `v` of length `1..=max_len` that do not pass through
/// `v` internally.
pub fn closed_simple_paths(g: &Graph, v: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier = vec![Path::vertex(v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.out_edges(p.range()) {
                let q = g.extend(p, e).expect("out edge composes");
                if q.range() == v {
                    out.push(q);
                } else {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Graph-side summary printed by `lpa analyze`.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub vertices: Vec<VertexEntry>,
    pub cycles: Vec<CycleEntry>,
    pub cycles_truncated: bool,
    pub hereditary_saturated: Option<Vec<Vec<String>>>,
    pub only_trivial_hs: bool,
    pub every_cycle_has_exit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexEntry {
    pub id: String,
    pub kind: crate::graph::VertexKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleEntry {
    pub base: String,
    pub edges: Vec<String>,
    pub exit: Option<String>,
}

pub fn analyze(g: &Graph, cycle_cap: usize, force: bool) -> AnalysisReport {
    let (cycles, truncated) = match enumerate_cycles(g, cycle_cap) {
        Ok(c) => (c, false),
        Err(_) => (exitless_cycles(g), true),
    };
    AnalysisReport {
        vertices: g
            .classify_vertices()
            .into_iter()
            .map(|(v, kind)| VertexEntry {
                id: g.vertex_name(v).to_string(),
                kind,
            })
            .collect(),
        cycles: cycles
            .iter()
            .map(|c| CycleEntry {
                base: g.vertex_name(c.base()).to_string(),
                edges: c.edge_names(g),
                exit: cycle_has_exit(g, c).map(|e| g.edge_name(e).to_string()),
            })
            .collect(),
        cycles_truncated: truncated,
        hereditary_saturated: enumerate_hs_subsets(g, SUBSET_BOUND, force)
            .ok()
            .map(|subs| subs.iter().map(|h| h.names(g)).collect()),
        only_trivial_hs: only_trivial_hs(g),
        every_cycle_has_exit: every_cycle_has_exit(g).0,
    }
}
