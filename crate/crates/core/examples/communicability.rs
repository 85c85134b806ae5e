//! Off-diagonal entries of the bipartite exponential: how strongly one
//! hub communicates with another, or a hub with an authority. Same-side
//! diagonal entries are the centrality scores themselves and are skipped.
//!
//! Run with `cargo run --example communicability`.

use hubauth::rankers::{communicability, Communicability, EvaluationMode};
use hubauth::samples;

fn main() -> hubauth::Result<()> {
    let g = samples::example1();
    let n = g.n();
    for (kind, label) in [
        (Communicability::Hub, "hub-hub"),
        (Communicability::Authority, "authority-authority"),
        (Communicability::HubAuthority, "hub-authority"),
    ] {
        println!("{label}");
        for i in 0..n {
            let mut cells = Vec::with_capacity(n);
            for j in 0..n {
                if i == j && kind != Communicability::HubAuthority {
                    cells.push(format!("{:>8}", "-"));
                    continue;
                }
                let dense = communicability(&g, i, j, kind, EvaluationMode::Dense)?;
                let lanczos = communicability(&g, i, j, kind, EvaluationMode::Quadrature)?;
                assert!((dense - lanczos).abs() < 1e-8 * dense.abs().max(1.0));
                cells.push(format!("{dense:8.4}"));
            }
            println!("  {}", cells.join(" "));
        }
    }
    Ok(())
}
