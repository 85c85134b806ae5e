//! Immutable sparse digraph and the implicit bipartite operator built on it.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::SymmetricOperator;

/// Which of `A` or `Aᵀ` a kernel should apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Direct,
    Transposed,
}

/// Compressed sparse rows. Column indices within a row are sorted and unique.
#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Option<Vec<f64>>,
}

impl Csr {
    /// Builds rows from `(row, col, weight)` triples that are already sorted
    /// by `(row, col)` and free of duplicates.
    fn from_sorted(n: usize, triples: &[(usize, usize, f64)], weighted: bool) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(r, _, _) in triples {
            offsets[r + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = triples.iter().map(|&(_, c, _)| c).collect();
        let weights = weighted.then(|| triples.iter().map(|&(_, _, w)| w).collect());
        Csr { offsets, targets, weights }
    }

    #[inline]
    fn row(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    fn row_weights(&self, i: usize) -> Option<&[f64]> {
        self.weights.as_ref().map(|w| &w[self.offsets[i]..self.offsets[i + 1]])
    }

    #[inline]
    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let cols = self.row(i);
        match self.row_weights(i) {
            Some(w) => cols.iter().zip(w).map(|(&j, &wij)| wij * x[j]).sum(),
            None => cols.iter().map(|&j| x[j]).sum(),
        }
    }

    fn row_weight_sum(&self, i: usize) -> f64 {
        match self.row_weights(i) {
            Some(w) => w.iter().sum(),
            None => self.row(i).len() as f64,
        }
    }
}

/// A simple directed graph on nodes `0..n`, stored as forward rows of `A`
/// and reverse rows of `Aᵀ`.
///
/// Self-loops are dropped and duplicate edges merged (weights summed) when
/// the graph is built, so the stored adjacency is always simple.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    n: usize,
    forward: Csr,
    reverse: Csr,
    self_loops_dropped: usize,
}

impl DirectedGraph {
    /// Builds a graph with unit weights. Indices must lie in `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_weighted_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    /// Builds a graph from weighted edges. Self-loops are dropped and
    /// counted, parallel edges are merged by summing weights.
    pub fn from_weighted_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut triples = Vec::new();
        let mut self_loops = 0;
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) references a node outside 0..{n}")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) has weight {w}")));
            }
            if w < 0.0 {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) has negative weight {w}")));
            }
            if u == v {
                self_loops += 1;
                continue;
            }
            triples.push((u, v, w));
        }
        Ok(Self::from_triples(n, triples, self_loops))
    }

    fn from_triples(n: usize, mut triples: Vec<(usize, usize, f64)>, self_loops: usize) -> Self {
        triples.sort_by_key(|t| (t.0, t.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triples.len());
        for (u, v, w) in triples {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += w,
                _ => merged.push((u, v, w)),
            }
        }
        let weighted = merged.iter().any(|&(_, _, w)| w != 1.0);
        let forward = Csr::from_sorted(n, &merged, weighted);
        let mut transposed: Vec<(usize, usize, f64)> = merged.iter().map(|&(u, v, w)| (v, u, w)).collect();
        transposed.sort_by_key(|t| (t.0, t.1));
        let reverse = Csr::from_sorted(n, &transposed, weighted);
        DirectedGraph { n, forward, reverse, self_loops_dropped: self_loops }
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (distinct, non-loop) directed edges.
    pub fn edge_count(&self) -> usize {
        self.forward.targets.len()
    }

    /// True when at least one edge weight differs from 1.
    pub fn is_weighted(&self) -> bool {
        self.forward.weights.is_some()
    }

    /// Self-loops discarded while the graph was built.
    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    /// Targets of edges leaving `i`, ascending.
    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        self.forward.row(i)
    }

    /// Sources of edges entering `i`, ascending.
    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        self.reverse.row(i)
    }

    /// Weight of edge `u → v`, zero when absent.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        let row = self.forward.row(u);
        match row.binary_search(&v) {
            Ok(pos) => self.forward.row_weights(u).map_or(1.0, |w| w[pos]),
            Err(_) => 0.0,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.forward.row(u).binary_search(&v).is_ok()
    }

    /// All edges `(u, v, w)` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            let w = self.forward.row_weights(u);
            self.forward.row(u).iter().enumerate().map(move |(k, &v)| (u, v, w.map_or(1.0, |w| w[k])))
        })
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.forward.row(i).len()).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.reverse.row(i).len()).collect()
    }

    /// `(out_degrees, in_degrees)`; both sum to the edge count.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        (self.out_degrees(), self.in_degrees())
    }

    /// Weighted out-degree (row sum of `A`) of node `i`.
    pub fn out_strength(&self, i: usize) -> f64 {
        self.forward.row_weight_sum(i)
    }

    /// Weighted in-degree (column sum of `A`) of node `i`.
    pub fn in_strength(&self, i: usize) -> f64 {
        self.reverse.row_weight_sum(i)
    }

    /// Largest edge weight, zero for an edgeless graph.
    pub fn max_weight(&self) -> f64 {
        match &self.forward.weights {
            Some(w) => w.iter().copied().fold(0.0, f64::max),
            None if self.edge_count() > 0 => 1.0,
            None => 0.0,
        }
    }

    /// `A·x` or `Aᵀ·x`.
    pub fn spmv(&self, x: &[f64], orientation: Orientation) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a graph with {} nodes",
                x.len(),
                self.n
            )));
        }
        let mut y = vec![0.0; self.n];
        self.spmv_into(x, &mut y, orientation);
        Ok(y)
    }

    /// Unchecked variant of [`spmv`](Self::spmv) writing into `y`.
    ///
    /// Each output entry is accumulated over its stored row in ascending
    /// column order, so results do not depend on threading.
    pub fn spmv_into(&self, x: &[f64], y: &mut [f64], orientation: Orientation) {
        let rows = match orientation {
            Orientation::Direct => &self.forward,
            Orientation::Transposed => &self.reverse,
        };
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = rows.row_dot(i, x);
        }
    }

    /// Dense copy of `A`.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (u, v, w) in self.edges() {
            a[(u, v)] = w;
        }
        a
    }

    /// The same graph with every edge reversed (adjacency `Aᵀ`).
    pub fn reversed(&self) -> DirectedGraph {
        DirectedGraph {
            n: self.n,
            forward: self.reverse.clone(),
            reverse: self.forward.clone(),
            self_loops_dropped: self.self_loops_dropped,
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DirectedGraph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation of the node set".into()));
        }
        let triples = self.edges().map(|(u, v, w)| (perm[u], perm[v], w)).collect();
        Ok(Self::from_triples(self.n, triples, self.self_loops_dropped))
    }

    /// Implicit `[[0, A], [Aᵀ, 0]]` view.
    pub fn bipartite(&self) -> BipartiteOperator<'_> {
        BipartiteOperator { graph: self }
    }
}

/// The symmetric operator `[[0, A], [Aᵀ, 0]]` of dimension `2n`.
///
/// Indices `0..n` are the hub copies of the nodes and `n..2n` the authority
/// copies. Only matrix-vector products are exposed.
#[derive(Debug, Clone, Copy)]
pub struct BipartiteOperator<'g> {
    graph: &'g DirectedGraph,
}

impl<'g> BipartiteOperator<'g> {
    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    /// `(A·x_bot, Aᵀ·x_top)` for `x = (x_top, x_bot)`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for an operator of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y);
        Ok(y)
    }

    /// Dense `2n × 2n` copy, for small graphs only.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.graph.n;
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (u, v, w) in self.graph.edges() {
            m[(u, n + v)] = w;
            m[(n + v, u)] = w;
        }
        m
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn gershgorin_bound(&self) -> f64 {
        let n = self.graph.n;
        (0..n).map(|i| self.graph.out_strength(i).max(self.graph.in_strength(i))).fold(0.0, f64::max)
    }
}

impl SymmetricOperator for BipartiteOperator<'_> {
    fn dim(&self) -> usize {
        2 * self.graph.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.graph.n;
        let (x_top, x_bot) = x.split_at(n);
        let (y_top, y_bot) = y.split_at_mut(n);
        // Lanczos vectors started from a single node live on one half.
        if x_bot.iter().all(|&v| v == 0.0) {
            y_top.fill(0.0);
        } else {
            self.graph.spmv_into(x_bot, y_top, Orientation::Direct);
        }
        if x_top.iter().all(|&v| v == 0.0) {
            y_bot.fill(0.0);
        } else {
            self.graph.spmv_into(x_top, y_bot, Orientation::Transposed);
        }
    }
}
