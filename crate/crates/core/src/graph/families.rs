//! Named graphs used as fixtures throughout the crate.

use super::{Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::from_edges(n, pairs).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// K_{1,leaves} with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// K5 minus the edge {3,4}; vertices 0, 1, 2 have degree 4.
pub fn k5_minus_e() -> Graph {
    let pairs = (0..5usize)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .filter(|&p| p != (3, 4));
    Graph::from_edges(5, pairs).unwrap()
}

/// Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i–i+5.
pub fn petersen() -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
        pairs.push((i, i + 5));
    }
    Graph::from_edges(10, pairs).unwrap()
}

/// Petersen graph with vertex 0 deleted (P*).
pub fn petersen_minus_vertex() -> Graph {
    let keep: Vec<Vertex> = (1..10).collect();
    petersen().induced(&keep).0
}
