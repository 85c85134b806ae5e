//! The classical rankers on one graph: Katz, resolvent, row and column
//! sums of e^A, PageRank, Reverse PageRank and truncated spectral scores.
//!
//! Run with `cargo run --example baselines`.

use hubauth::rankers::{
    expa_row_col_sums, katz_row_col, pagerank, resolvent_bipartite, truncated_spectral_scores, EvaluationMode,
    PageRankOptions,
};
use hubauth::{samples, ScoreVector};

fn show(label: &str, s: &ScoreVector) {
    let cells: Vec<String> = s.scores.iter().map(|x| format!("{x:.4}")).collect();
    println!("{label:<24} [{}]  {}", cells.join(", "), s.rank_table().display(1));
}

fn main() -> hubauth::Result<()> {
    let g = samples::example1();

    let katz = katz_row_col(&g, None)?;
    println!("Katz with c = {:.4}", katz.hub.method.params["c"]);
    show("  hubs", &katz.hub);
    show("  authorities", &katz.authority);

    let res = resolvent_bipartite(&g, None, EvaluationMode::Auto)?;
    println!("bipartite resolvent with c = {:.4}", res.hub.method.params["c"]);
    show("  hubs", &res.hub);
    show("  authorities", &res.authority);

    let sums = expa_row_col_sums(&g)?;
    show("e^A row sums", &sums.hub);
    show("e^A column sums", &sums.authority);

    let opts = PageRankOptions::default();
    show("PageRank", &pagerank(&g, &opts, false)?);
    show("Reverse PageRank", &pagerank(&g, &opts, true)?);

    for k in [1, 2, 8] {
        let t = truncated_spectral_scores(&g, k)?;
        show(&format!("{k} spectral term(s), hubs"), &t.hub);
    }
    Ok(())
}
