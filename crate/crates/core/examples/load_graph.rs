//! Reading graphs from edge lists and Matrix Market files, and writing
//! them back.
//!
//! Run with `cargo run --example load_graph`.

use std::io::Cursor;

use hubauth::io::{load_edge_list, load_matrix_market, write_edge_list, EdgeListOptions, IndexBase};

fn main() -> hubauth::Result<()> {
    // Zero-based ids, a duplicate edge and a self-loop.
    let text = "# u v\n0 1\n1 2\n1 2\n2 2\n2 0\n";
    let g = load_edge_list(Cursor::new(text), EdgeListOptions::with_base(IndexBase::Zero))?;
    println!("edge list: n = {}, m = {}, self-loops dropped = {}", g.n(), g.edge_count(), g.self_loops_dropped());

    let mtx = "%%MatrixMarket matrix coordinate real general\n% weighted\n3 3 3\n1 2 0.5\n2 3 2.0\n3 1 1.0\n";
    let h = load_matrix_market(Cursor::new(mtx))?;
    println!("matrix market: n = {}, m = {}, weighted = {}", h.n(), h.edge_count(), h.is_weighted());

    let mut out = Vec::new();
    write_edge_list(&h, &mut out)?;
    print!("canonical 0-based form:\n{}", String::from_utf8_lossy(&out));

    let err = load_edge_list(Cursor::new("1 x\n"), EdgeListOptions::default()).unwrap_err();
    println!("malformed input: {err} (exit code {})", err.exit_code());
    Ok(())
}
