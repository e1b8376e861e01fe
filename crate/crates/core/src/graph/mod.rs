//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Every edge gets a stable index in
//! `0..m` (edges sorted lexicographically by their canonical `(u, v)` with
//! `u < v`), which colorings use as their key.

mod edgelist;
pub mod families;
mod graph6;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edgelist::{emit_edge_list, parse_edge_list};
pub use graph6::{emit_graph6, parse_graph6, GRAPH6_HEADER};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}

/// An undirected edge in canonical orientation `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Builds the canonical edge between `a` and `b`.
    ///
    /// Panics on `a == b`; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "{x} is not an endpoint of {self}");
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    // inc[v][k] is the edge index of the edge {v, adj[v][k]}
    inc: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// All edges, sorted; position in this slice is the edge index.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Edge indices incident to `v`, parallel to [`Graph::neighbors`].
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.inc[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn checked_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.degree(v))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n() })
        }
    }

    /// Maximum degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        if a >= self.n() || b >= self.n() {
            return None;
        }
        self.adj[a]
            .binary_search(&b)
            .ok()
            .map(|pos| self.inc[a][pos])
    }

    pub fn edge_index_of(&self, e: Edge) -> Option<usize> {
        self.edge_index(e.u, e.v)
    }

    /// Neighbors of `v` that have maximum degree.
    pub fn max_degree_neighbors(&self, v: Vertex) -> usize {
        let delta = self.max_degree();
        self.adj[v]
            .iter()
            .filter(|&&w| self.degree(w) == delta)
            .count()
    }

    /// The subgraph induced by the vertices of maximum degree.
    pub fn core(&self) -> Result<Core, GraphError> {
        if self.m() == 0 {
            return Err(GraphError::Edgeless);
        }
        let delta = self.max_degree();
        let keep: Vec<Vertex> = self
            .vertices()
            .filter(|&v| self.degree(v) == delta)
            .collect();
        let (graph, _) = self.induced(&keep);
        Ok(Core { graph, map: keep })
    }

    /// Maximum degree of the core.
    pub fn core_max_degree(&self) -> Result<usize, GraphError> {
        Ok(self.core()?.graph.max_degree())
    }

    /// `m > Δ·⌊n/2⌋`.
    pub fn is_overfull(&self) -> Result<bool, GraphError> {
        if self.m() == 0 {
            return Err(GraphError::Edgeless);
        }
        Ok(self.m() > self.max_degree() * (self.n() / 2))
    }

    /// Connected components ordered by smallest vertex; each component is
    /// sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut parts = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut part = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        part.push(y);
                        stack.push(y);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// True for graphs with exactly one component (the empty graph is not
    /// connected).
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Whether the graph is K5 with one edge removed.
    pub fn is_k5_minus_e(&self) -> bool {
        if self.n() != 5 || self.m() != 9 {
            return false;
        }
        let low: Vec<Vertex> = self.vertices().filter(|&v| self.degree(v) == 3).collect();
        let high = self.vertices().filter(|&v| self.degree(v) == 4).count();
        low.len() == 2 && high == 3 && !self.has_edge(low[0], low[1])
    }

    /// Induced subgraph on `keep` (in the given order). The returned map sends
    /// new ids to old ids.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(keep.len());
        for e in &self.edges {
            let (a, c) = (index[e.u], index[e.v]);
            if a != usize::MAX && c != usize::MAX {
                b.add_edge(a, c).expect("induced edges are simple");
            }
        }
        (b.build(), keep.to_vec())
    }

    /// Copy of the graph with edge `e` removed.
    pub fn without_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if !self.has_edge(e.u, e.v) {
            return Err(GraphError::MissingEdge(e));
        }
        Ok(self.filter_edges(|f| f != e))
    }

    /// Copy of the graph keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Edge) -> bool) -> Graph {
        let mut b = GraphBuilder::new(self.n());
        for &e in &self.edges {
            if keep(e) {
                b.add_edge(e.u, e.v).expect("subgraph edges are simple");
            }
        }
        b.build()
    }

    /// Drops isolated vertices, returning the compacted graph and the map from
    /// new ids to old ids.
    pub fn without_isolated(&self) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        assert_eq!(perm.len(), self.n(), "relabeling must cover every vertex");
        Graph::from_edges(self.n(), self.edges.iter().map(|e| (perm[e.u], perm[e.v])))
    }
}

/// Result of [`Graph::core`]: the core graph and, for each core vertex, its
/// id in the parent graph.
#[derive(Debug, Clone)]
pub struct Core {
    pub graph: Graph,
    pub map: Vec<Vertex>,
}

/// Accumulates edges and produces an immutable [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<Vertex>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.adj.len() && self.adj[a].contains(&b)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<&mut Self, GraphError> {
        let n = self.adj.len();
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { v: x, n });
            }
        }
        let e = Edge::try_new(a, b)?;
        if self.adj[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        Ok(self)
    }

    pub fn build(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        let mut edges: Vec<Edge> = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push(Edge { u, v });
                }
            }
        }
        // already lexicographic: u ascending, then v ascending within adj[u]
        let mut inc: Vec<Vec<usize>> = self.adj.iter().map(|l| vec![0; l.len()]).collect();
        for (idx, e) in edges.iter().enumerate() {
            let pu = self.adj[e.u].binary_search(&e.v).unwrap();
            let pv = self.adj[e.v].binary_search(&e.u).unwrap();
            inc[e.u][pu] = idx;
            inc[e.v][pv] = idx;
        }
        Graph {
            adj: self.adj,
            inc,
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn degrees_of_k5_minus_e() {
        let g = k5_minus_e();
        assert_eq!(g.degree(3), 3);
        assert_eq!(g.degree(4), 3);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.max_degree(), 4);
        assert_eq!(cycle(6).degree(2), 2);
        assert!(matches!(
            g.checked_degree(5),
            Err(GraphError::VertexOutOfRange { v: 5, n: 5 })
        ));
    }

    #[test]
    fn max_degree_of_edgeless_is_zero() {
        assert_eq!(Graph::empty(3).max_degree(), 0);
        assert_eq!(Graph::empty(0).max_degree(), 0);
    }

    #[test]
    fn core_examples() {
        let c = k5_minus_e().core().unwrap();
        assert_eq!(c.map, vec![0, 1, 2]);
        assert_eq!(c.graph.m(), 3);
        assert_eq!(c.graph.max_degree(), 2);

        let c6 = cycle(6);
        let c = c6.core().unwrap();
        assert_eq!(c.graph, c6);

        let c = star(4).core().unwrap();
        assert_eq!(c.graph.n(), 1);
        assert_eq!(c.graph.m(), 0);

        assert_eq!(Graph::empty(4).core().unwrap_err(), GraphError::Edgeless);
    }

    #[test]
    fn overfull_examples() {
        assert!(k5_minus_e().is_overfull().unwrap());
        assert!(!cycle(6).is_overfull().unwrap());
        assert!(cycle(3).is_overfull().unwrap());
        assert_eq!(Graph::empty(2).is_overfull(), Err(GraphError::Edgeless));
    }

    #[test]
    fn component_examples() {
        assert_eq!(
            k5_minus_e().connected_components(),
            vec![vec![0, 1, 2, 3, 4]]
        );
        let k1_k2 = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(k1_k2.connected_components(), vec![vec![0], vec![1, 2]]);
        assert!(Graph::empty(0).connected_components().is_empty());
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn k5_minus_e_recognition() {
        let g = complete(5).without_edge(Edge::new(3, 4)).unwrap();
        assert!(g.is_k5_minus_e());
        assert!(!complete(5).is_k5_minus_e());
        assert!(!cycle(5).is_k5_minus_e());
        // relabeled copy
        let h = g.relabel(&[4, 2, 0, 1, 3]).unwrap();
        assert!(h.is_k5_minus_e());
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = GraphBuilder::new(3);
        assert_eq!(b.add_edge(1, 1).unwrap_err(), GraphError::SelfLoop(1));
        assert!(matches!(
            b.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
        b.add_edge(0, 1).unwrap();
        assert_eq!(
            b.add_edge(1, 0).unwrap_err(),
            GraphError::DuplicateEdge(Edge::new(0, 1))
        );
    }

    #[test]
    fn edge_indices_are_consistent() {
        let g = petersen();
        for (idx, e) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_index(e.u(), e.v()), Some(idx));
            assert_eq!(g.edge_index(e.v(), e.u()), Some(idx));
        }
        for v in g.vertices() {
            for (k, &w) in g.neighbors(v).iter().enumerate() {
                assert_eq!(g.edge(g.incident(v)[k]), Edge::new(v, w));
            }
        }
        let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn without_edge_requires_presence() {
        let g = cycle(4);
        assert_eq!(
            g.without_edge(Edge::new(0, 2)).unwrap_err(),
            GraphError::MissingEdge(Edge::new(0, 2))
        );
        let h = g.without_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(h.m(), 3);
        assert!(!h.has_edge(0, 1));
    }
}
