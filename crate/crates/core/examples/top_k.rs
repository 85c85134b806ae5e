//! Certified top-k hubs of a random web-like digraph using only quadrature
//! bounds, checked against the dense exponential.
//!
//! Run with `cargo run --release --example top_k`.

use hubauth::rankers::exp_centrality_exact;
use hubauth::topk::{identify_top_k, rank_in_top_m, TopKOptions};
use hubauth::{DirectedGraph, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Each new page links to a few earlier pages, preferring popular ones.
fn web_graph(n: usize, links: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<usize> = vec![0];
    let mut edges = Vec::new();
    for u in 1..n {
        for _ in 0..links {
            let v = targets[rng.gen_range(0..targets.len())];
            if v != u {
                edges.push((u, v));
                targets.push(v);
            }
        }
        if rng.gen_bool(0.3) {
            edges.push((rng.gen_range(0..u), u));
        }
        targets.push(u);
    }
    DirectedGraph::from_edges(n, edges).expect("generated ids are in range")
}

fn main() -> hubauth::Result<()> {
    let g = web_graph(600, 3, 7);
    println!("graph: n = {}, m = {}", g.n(), g.edge_count());

    let opts = TopKOptions::default();
    let report = identify_top_k(&g, 10, Side::Authority, &opts)?;
    println!(
        "top 10 authorities certified = {}, ordered = {}, rounds = {}, max Lanczos steps = {}",
        report.certified, report.fully_ordered, report.rounds, report.max_iterations
    );
    let touched = report.iterations.iter().filter(|&&p| p > 0).count();
    let pruned_early = report.iterations.iter().filter(|&&p| (1..=3).contains(&p)).count();
    println!("{touched} nodes probed, {pruned_early} of them discarded after at most 3 steps");
    for b in &report.member_bounds {
        println!("  node {:>4}  [{:.9e}, {:.9e}]  p = {}", b.node + 1, b.lower, b.upper, b.p);
    }

    let dense = exp_centrality_exact(&g)?.authority.rank_table();
    println!("dense top 10 agrees: {}", dense.top(10) == report.members.as_slice());

    // Cheaper question: which 10 nodes are guaranteed to lie in the top 30?
    let relaxed = rank_in_top_m(&g, 10, 30, Side::Hub, &TopKOptions { order_members: false, ..opts })?;
    println!(
        "10 hubs inside the top 30: certified = {}, max Lanczos steps = {}",
        relaxed.certified, relaxed.max_iterations
    );
    Ok(())
}
