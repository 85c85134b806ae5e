//! Small reference digraphs used by the examples, tests and docs.
//!
//! Node ids are 0-based; the printed tables these graphs are usually quoted
//! with number nodes from 1.

use crate::graph::DirectedGraph;

fn build(n: usize, one_based: &[(usize, usize)]) -> DirectedGraph {
    DirectedGraph::from_edges(n, one_based.iter().map(|&(u, v)| (u - 1, v - 1))).expect("sample graph is well formed")
}

/// Four nodes, seven edges; hub ranking by exponential centrality is
/// `{1; 3; 2; 4}` and authority ranking `{2; 3; 4; 1}` (1-based).
pub fn example1() -> DirectedGraph {
    build(4, &[(1, 2), (1, 3), (2, 1), (2, 3), (3, 2), (3, 4), (4, 2)])
}

/// Four nodes whose `AᵀA` has a double dominant eigenvalue.
pub fn example2() -> DirectedGraph {
    build(4, &[(1, 3), (2, 1), (2, 4), (3, 2), (4, 2)])
}

/// Six nodes: 2..5 point to 1, and 6 points to 2..5.
pub fn example3() -> DirectedGraph {
    build(6, &[(2, 1), (3, 1), (4, 1), (5, 1), (6, 2), (6, 3), (6, 4), (6, 5)])
}

/// Directed path `1 → 2 → … → n`.
pub fn directed_path(n: usize) -> DirectedGraph {
    DirectedGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is well formed")
}

/// Two nodes pointing at each other.
pub fn two_cycle() -> DirectedGraph {
    build(2, &[(1, 2), (2, 1)])
}

/// `n` isolated nodes.
pub fn edgeless(n: usize) -> DirectedGraph {
    DirectedGraph::from_edges(n, std::iter::empty()).expect("n >= 1")
}
