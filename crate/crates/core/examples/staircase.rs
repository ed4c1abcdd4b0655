//! k* as a function of g: a staircase of level crossings.
//!
//!     cargo run --release --example staircase -- 32 1e-4

use dicke_control::params::ModelParams;
use dicke_control::spectrum::{kstar_perturbative, staircase, ScanPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(32), |s| s.parse())?;
    let eta: f64 = args.get(1).map_or(Ok(1e-4), |s| s.parse())?;

    let grid: Vec<f64> = (0..=60).map(|i| 0.5 + 0.1 * i as f64).collect();
    let points = staircase(m, eta, &grid, &ScanPolicy::default())?;

    println!("{:>6} {:>5} {:>5}  ", "g", "k*", "pert");
    for p in &points {
        let pert = kstar_perturbative(&ModelParams::new(m, p.g, eta)?);
        let k = p.k_star.map_or("NA".to_string(), |k| k.to_string());
        let bar = "#".repeat(p.k_star.unwrap_or(0));
        println!("{:>6.2} {k:>5} {pert:>5}  {bar}", p.g);
    }
    Ok(())
}
