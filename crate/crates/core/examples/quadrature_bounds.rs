//! Lanczos quadrature brackets for a single diagonal entry of the bipartite
//! exponential, step by step.
//!
//! Run with `cargo run --example quadrature_bounds`.

use hubauth::linalg::dense_expm;
use hubauth::quadrature::{spectrum_interval, MatrixFunction, QuadratureProbe};
use hubauth::samples;

fn main() -> hubauth::Result<()> {
    let g = samples::example1();
    let op = g.bipartite();
    let iv = spectrum_interval(&g);
    let exact = dense_expm(&op.to_dense())?;
    println!("spectrum enclosed in [{:.4}, {:.4}]", iv.lower, iv.upper);

    // Authority score of node 2 is the diagonal entry n + 1 (0-based).
    let entry = g.n() + 1;
    let mut probe = QuadratureProbe::new(&op, entry, iv, MatrixFunction::Exp);
    println!("exact value {:.12}", exact[(entry, entry)]);
    println!("{:>2}  {:>15}  {:>15}  {:>15}  {:>15}", "p", "Radau lower", "Gauss", "Radau upper", "Lobatto");
    for p in 1..=5 {
        let b = probe.bounds(p)?;
        let gauss = probe.gauss(p)?;
        let lobatto = probe.lobatto(p)?;
        println!("{p:>2}  {:>15.12}  {gauss:>15.12}  {:>15.12}  {lobatto:>15.12}", b.lower, b.upper);
        if b.exact {
            println!("Lanczos ran out of directions; the value is exact");
            break;
        }
    }
    Ok(())
}
