//! Spectral summaries: leading singular values, the relative gap that
//! decides whether HITS and the exponential agree, edge symmetry, the trace
//! of the bipartite exponential and a few Ritz values.
//!
//! Run with `cargo run --example spectrum`.

use hubauth::analysis::{estrada_index, ritz_values, spectral_gap, symmetry_fraction};
use hubauth::{samples, DirectedGraph};

fn summary(name: &str, g: &DirectedGraph) -> hubauth::Result<()> {
    let gap = spectral_gap(g);
    println!(
        "{name:<10} sigma1 = {:.4}  sigma2 = {:.4}  gap = {:.4} ({:?})  symmetric edges = {:.1}%  trace = {:.4}",
        gap.sigma1,
        gap.sigma2,
        gap.relative_gap,
        gap.annotation,
        100.0 * symmetry_fraction(g),
        estrada_index(g)?
    );
    let ritz: Vec<String> = ritz_values(g, 4)?.iter().map(|t| format!("{t:.4}")).collect();
    println!("{:<10} Ritz values after 4 steps: {}", "", ritz.join(" "));
    Ok(())
}

fn main() -> hubauth::Result<()> {
    summary("Example 1", &samples::example1())?;
    summary("Example 2", &samples::example2())?;
    summary("Example 3", &samples::example3())?;
    summary("path(8)", &samples::directed_path(8))?;
    summary("2-cycle", &samples::two_cycle())?;
    Ok(())
}
