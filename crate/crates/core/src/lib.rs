//! Constructive 4-edge-coloring for connected graphs of maximum degree 4
//! whose maximum-degree vertices induce a subgraph of maximum degree at most
//! two. The only such graph needing five colors is K5 minus an edge; every
//! other one is colored by locating one of three reducible configurations
//! and extending a coloring of the graph minus one edge with Kempe swaps.

pub mod coloring;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod reducibility;
pub mod structure;
