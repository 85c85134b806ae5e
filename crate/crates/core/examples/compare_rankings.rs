//! Kendall tau-b and top-k overlap between the exponential ranking and the
//! classical baselines.
//!
//! Run with `cargo run --example compare_rankings`.

use hubauth::analysis::compare_methods;
use hubauth::rankers::{rank, Method, RankOptions};
use hubauth::{samples, Side};

fn main() -> hubauth::Result<()> {
    let g = samples::example1();
    let opts = RankOptions::default();
    for side in [Side::Hub, Side::Authority] {
        let reference = rank(&g, Method::ExpExact, side, &opts)?;
        println!("{} scores against exp-exact", side.as_str());
        for method in
            [Method::Hits, Method::Katz, Method::Resolvent, Method::ExpaSums, Method::Pagerank, Method::Degree]
        {
            let other = rank(&g, method, side, &opts)?;
            let report = compare_methods(&reference, &other, &[1, 2])?;
            println!(
                "  {:<10} tau_b = {:+.4}  overlap@1 = {:.2}  overlap@2 = {:.2}",
                method.as_str(),
                report.kendall_tau_b,
                report.overlap_at_k[0].1,
                report.overlap_at_k[1].1
            );
        }
    }
    Ok(())
}
