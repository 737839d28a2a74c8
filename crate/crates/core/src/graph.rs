//! Finite directed graphs `(V, E, s, r)` and their paths.
//!
//! Vertex and edge ids are kept in lexicographic order of their names, so
//! index order is the global order used for canonical forms everywhere.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Identity of a graph for cross-graph checks; equal for structurally
/// identical graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphId(pub u64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph document is not valid JSON for the schema (line {line}, column {column}): {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("empty id")]
    EmptyId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("id {0:?} names both a vertex and an edge")]
    SharedId(String),
    #[error("edge {edge:?} has dangling {end} {vertex:?}")]
    DanglingEndpoint {
        edge: String,
        end: &'static str,
        vertex: String,
    },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edges {0:?} and {1:?} are not composable")]
    NotComposable(String, String),
    #[error("{what} has {size} vertices, above the bound {bound}; pass --force to override")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCap(usize),
}

/// On-disk JSON form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    dst: Vec<VertexId>,
    out: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    id: GraphId,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.edge_names == other.edge_names
            && self.src == other.src
            && self.dst == other.dst
    }
}

impl Eq for Graph {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Sink,
    Regular,
}

/// Parses and validates a graph document.
pub fn load_graph(document: &str) -> Result<Graph, GraphError> {
    let doc: GraphDocument = serde_json::from_str(document).map_err(|e| GraphError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Graph::from_document(&doc)
}

impl Graph {
    pub fn from_document(doc: &GraphDocument) -> Result<Graph, GraphError> {
        let mut vertex_names: Vec<String> = Vec::with_capacity(doc.vertices.len());
        let mut seen = BTreeSet::new();
        for v in &doc.vertices {
            if v.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if !seen.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
            vertex_names.push(v.clone());
        }
        vertex_names.sort();
        let vertex_index: HashMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i as u32)))
            .collect();

        let mut edges: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
        for e in &doc.edges {
            if e.id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if vertex_index.contains_key(&e.id) {
                return Err(GraphError::SharedId(e.id.clone()));
            }
            if edges.insert(&e.id, (&e.src, &e.dst)).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            for (end, name) in [("source", &e.src), ("range", &e.dst)] {
                if !vertex_index.contains_key(name) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: e.id.clone(),
                        end,
                        vertex: name.clone(),
                    });
                }
            }
        }

        let n = vertex_names.len();
        let mut graph = Graph {
            edge_names: Vec::with_capacity(edges.len()),
            src: Vec::with_capacity(edges.len()),
            dst: Vec::with_capacity(edges.len()),
            out: vec![Vec::new(); n],
            incoming: vec![Vec::new(); n],
            edge_index: HashMap::new(),
            vertex_names,
            vertex_index,
            id: GraphId(0),
        };
        for (i, (name, (s, d))) in edges.into_iter().enumerate() {
            let eid = EdgeId(i as u32);
            let s = graph.vertex_index[s];
            let d = graph.vertex_index[d];
            graph.edge_names.push(name.to_string());
            graph.edge_index.insert(name.to_string(), eid);
            graph.src.push(s);
            graph.dst.push(d);
            graph.out[s.index()].push(eid);
            graph.incoming[d.index()].push(eid);
        }
        let mut h = DefaultHasher::new();
        graph.vertex_names.hash(&mut h);
        graph.edge_names.hash(&mut h);
        graph.src.hash(&mut h);
        graph.dst.hash(&mut h);
        graph.id = GraphId(h.finish());
        Ok(graph)
    }

    /// Convenience constructor from name tuples `(id, src, dst)`.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        Graph::from_document(&GraphDocument {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, d)| EdgeDocument {
                    id: id.to_string(),
                    src: s.to_string(),
                    dst: d.to_string(),
                })
                .collect(),
        })
    }

    /// The line graph `A_n`: `v1 -e1-> v2 -> ... -> vn`.
    pub fn line(n: usize) -> Graph {
        assert!(n >= 1, "line graph needs at least one vertex");
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges = (1..n)
            .map(|i| EdgeDocument {
                id: format!("e{i}"),
                src: format!("v{i}"),
                dst: format!("v{}", i + 1),
            })
            .collect();
        Graph::from_document(&GraphDocument { vertices, edges }).expect("line graph is valid")
    }

    /// One vertex `v` with `n` loops `e1..en`.
    pub fn rose(n: usize) -> Graph {
        let edges = (1..=n)
            .map(|i| EdgeDocument {
                id: format!("e{i}"),
                src: "v".into(),
                dst: "v".into(),
            })
            .collect();
        Graph::from_document(&GraphDocument {
            vertices: vec!["v".into()],
            edges,
        })
        .expect("rose graph is valid")
    }

    /// One vertex `v` with a single loop `e`.
    pub fn single_loop() -> Graph {
        Graph::from_parts(&["v"], &[("e", "v", "v")]).expect("loop graph is valid")
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges()
                .map(|e| EdgeDocument {
                    id: self.edge_name(e).to_string(),
                    src: self.vertex_name(self.source(e)).to_string(),
                    dst: self.vertex_name(self.range(e)).to_string(),
                })
                .collect(),
        }
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator {
        (0..self.edge_names.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.index()]
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.src[e.index()]
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.dst[e.index()]
    }

    /// `s^{-1}(v)` in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.index()]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v.index()]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v.index()].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out[v.index()].is_empty()
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edge_count()
    }

    /// Sink or regular for every vertex (finite graphs have no infinite
    /// emitters).
    pub fn classify_vertices(&self) -> BTreeMap<VertexId, VertexKind> {
        self.vertices()
            .map(|v| {
                let kind = if self.is_sink(v) {
                    VertexKind::Sink
                } else {
                    VertexKind::Regular
                };
                (v, kind)
            })
            .collect()
    }

    /// True when the graph has no closed path of positive length.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let mut indeg: Vec<usize> = self.vertices().map(|v| self.in_edges(v).len()).collect();
        let mut stack: Vec<VertexId> = self.vertices().filter(|v| indeg[v.index()] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &e in self.out_edges(v) {
                let w = self.range(e);
                indeg[w.index()] -= 1;
                if indeg[w.index()] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == self.vertex_count()
    }

    /// Builds a path, checking composability.
    pub fn path(&self, start: VertexId, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let mut at = start;
        for &e in edges {
            if !self.contains_edge(e) {
                return Err(GraphError::UnknownEdge(format!("#{}", e.0)));
            }
            if self.source(e) != at {
                return Err(GraphError::NotComposable(
                    self.vertex_name(at).to_string(),
                    self.edge_name(e).to_string(),
                ));
            }
            at = self.range(e);
        }
        Ok(Path {
            start,
            edges: edges.to_vec(),
            end: at,
        })
    }

    /// Path from a nonempty sequence of edge names.
    pub fn path_of(&self, names: &[&str]) -> Result<Path, GraphError> {
        let edges = names
            .iter()
            .map(|n| self.edge(n).ok_or_else(|| GraphError::UnknownEdge(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let first = *edges.first().ok_or(GraphError::EmptyId)?;
        self.path(self.source(first), &edges)
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        Path {
            start: self.source(e),
            edges: vec![e],
            end: self.range(e),
        }
    }

    /// Path extended by one edge at its range, if composable.
    pub fn extend(&self, p: &Path, e: EdgeId) -> Option<Path> {
        (self.source(e) == p.end).then(|| {
            let mut edges = p.edges.clone();
            edges.push(e);
            Path {
                start: p.start,
                edges,
                end: self.range(e),
            }
        })
    }

    /// Every path of length at most `max_len`, ordered by start vertex and
    /// then edge sequence.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.end) {
                    next.push(self.extend(p, e).expect("out edge composes"));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        all
    }

    /// Renders a path as its edge names, or the vertex name for length 0.
    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.start).to_string()
        } else {
            p.edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(" ")
        }
    }
}

/// A path `e_1 ... e_n`; the empty edge sequence is the vertex `start`.
///
/// Ordering is lexicographic by start vertex, then edge sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
    end: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
            end: v,
        }
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    /// `self` is a prefix of `other` (vertices are prefixes of every path
    /// they start).
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// The `q'` with `other = self · q'`, when `self` is a prefix.
    pub fn strip_prefix(&self, other: &Path) -> Option<Path> {
        self.is_prefix_of(other).then(|| Path {
            start: self.end,
            edges: other.edges[self.edges.len()..].to_vec(),
            end: other.end,
        })
    }

    /// `self · q`, defined iff `r(self) = s(q)`.
    pub fn concat(&self, q: &Path) -> Option<Path> {
        (self.end == q.start).then(|| {
            let mut edges = self.edges.clone();
            edges.extend_from_slice(&q.edges);
            Path {
                start: self.start,
                edges,
                end: q.end,
            }
        })
    }

    /// `self^n` for a closed path.
    pub fn power(&self, n: usize) -> Path {
        debug_assert!(self.is_closed());
        let mut edges = Vec::with_capacity(self.edges.len() * n);
        for _ in 0..n {
            edges.extend_from_slice(&self.edges);
        }
        Path {
            start: self.start,
            edges,
            end: self.end,
        }
    }

    /// Re-checks the composability invariant against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        g.path(self.start, &self.edges)
            .map(|p| p.end == self.end)
            .unwrap_or(false)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
