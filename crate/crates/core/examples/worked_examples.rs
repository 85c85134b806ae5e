//! Exact hub and authority scores of three small digraphs, next to HITS
//! and degree rankings.
//!
//! Run with `cargo run --example worked_examples`.

use hubauth::rankers::{degree_scores, exp_centrality_exact, hits, HitsOptions};
use hubauth::{samples, DirectedGraph, ScoreVector};

fn row(label: &str, s: &ScoreVector) {
    let cells: Vec<String> = s.scores.iter().map(|x| format!("{x:.4}")).collect();
    println!("  {label:<18} [{}]  ranking {}", cells.join(", "), s.rank_table().display(1));
}

fn report(name: &str, g: &DirectedGraph) -> hubauth::Result<()> {
    println!("{name}: n = {}, m = {}", g.n(), g.edge_count());
    let exp = exp_centrality_exact(g)?;
    let h = hits(g, &HitsOptions::default())?;
    let deg = degree_scores(g)?;
    row("exp hub", &exp.hub);
    row("exp authority", &exp.authority);
    row("HITS hub", &h.hub);
    row("HITS authority", &h.authority);
    row("out-degree", &deg.hub);
    row("in-degree", &deg.authority);
    if h.hub.diagnostics.degenerate {
        println!("  HITS: leading singular value is repeated, the limit depends on the start vector");
    }
    println!();
    Ok(())
}

fn main() -> hubauth::Result<()> {
    report("Example 1", &samples::example1())?;
    report("Example 2", &samples::example2())?;
    report("Example 3", &samples::example3())?;
    Ok(())
}
