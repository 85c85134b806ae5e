//! Dense Padé exponential and the action of e^A on a vector.
//!
//! On a directed path the exponential is upper triangular with entries
//! 1/(j-i)!, which makes a convenient check.
//!
//! Run with `cargo run --example matrix_exponential`.

use hubauth::linalg::{dense_expm, expm_action};
use hubauth::{samples, Orientation};

fn main() -> hubauth::Result<()> {
    let g = samples::directed_path(6);
    let e = dense_expm(&g.to_dense())?;
    println!("e^A for the path on 6 nodes:");
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| format!("{:.6}", e[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }
    let mut worst = 0.0f64;
    for i in 0..6 {
        for j in i..6 {
            let factorial: f64 = (1..=(j - i)).map(|k| k as f64).product();
            worst = worst.max((e[(i, j)] - 1.0 / factorial).abs());
        }
    }
    println!("max deviation from 1/(j-i)!: {worst:.2e}");

    let ones = vec![1.0; 6];
    let y = expm_action(&g, &ones, Orientation::Transposed)?;
    println!("e^(A^T) 1 = {y:.6?}");
    Ok(())
}
