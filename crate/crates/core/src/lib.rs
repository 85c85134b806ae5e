//! Hub and authority ranking for directed networks.
//!
//! A digraph with adjacency matrix `A` is mapped to the symmetric bipartite
//! operator `[[0, A], [Aᵀ, 0]]`. The diagonal of its exponential gives hub
//! scores (first block) and authority scores (second block). Small graphs are
//! evaluated exactly with a dense Padé exponential; large graphs use Lanczos
//! and Gauss-Radau quadrature, which bracket every score between certified
//! lower and upper bounds and allow top-k selection by pruning.
//!
//! The crate also ships the classical baselines (HITS, Katz, resolvent,
//! row/column sums of `e^A`, PageRank and Reverse PageRank, degrees) and
//! tools to compare the resulting rankings.

// Negated comparisons are used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod quadrature;
pub mod rankers;
pub mod samples;
pub mod topk;

pub use error::{Error, Result};
pub use graph::{BipartiteOperator, DirectedGraph, Orientation};
pub use rankers::{RankTable, ScoreVector, Side};
