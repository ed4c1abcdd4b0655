//! Build one excitation multiplet and diagonalize it two ways.
//!
//!     cargo run --example block_matrix -- 8 1.5 0.01 4

use dicke_control::block::{basis_labels, build_block};
use dicke_control::params::{BlockIndex, ModelParams};
use dicke_control::tridiag::{dense_spectrum, lowest_eigenpair, sturm_count, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(8), |s| s.parse())?;
    let g: f64 = args.get(1).map_or(Ok(1.5), |s| s.parse())?;
    let eta: f64 = args.get(2).map_or(Ok(0.01), |s| s.parse())?;
    let k: usize = args.get(3).map_or(Ok(m / 2), |s| s.parse())?;

    let params = ModelParams::new(m, g, eta)?;
    let block = build_block(&params, BlockIndex(k));
    println!("M = {m}, g = {g}, eta = {eta}, multiplet k = {k} (dim {})", block.dim());
    println!("{:>3} {:>8} {:>6} {:>14} {:>14}", "n", "photons", "M3", "diag", "sub");
    for (n, label) in basis_labels(&params, BlockIndex(k)).iter().enumerate() {
        let sub = if n == 0 { String::new() } else { format!("{:14.8}", block.sub[n - 1]) };
        println!("{n:>3} {:>8} {:>6} {:>14.8} {sub}", label.photons, label.m3, block.diag[n]);
    }

    let low = lowest_eigenpair(&block.diag, &block.sub, DEFAULT_TOL)?;
    let all = dense_spectrum(&block.diag, &block.sub)?;
    println!("\nlowest (bisection + inverse iteration): {:.15}", low.value);
    println!("lowest (implicit QL):                   {:.15}", all[0]);
    println!("residual {:.2e} after {} inverse iterations", low.residual, low.iterations);
    println!("eigenvalues below 0: {}", sturm_count(&block.diag, &block.sub, 0.0)?);
    Ok(())
}
