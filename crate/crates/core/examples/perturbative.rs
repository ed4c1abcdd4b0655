//! How well does the weak-coupling energy formula track the exact blocks?
//!
//!     cargo run --example perturbative

use dicke_control::params::ModelParams;
use dicke_control::spectrum::compare_perturbative;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 64;
    let g = 2.0;
    let ks = [1, 8, 16, 24, 32];
    for eta in [1e-2, 1e-3, 1e-4, 1e-5] {
        let rows = compare_perturbative(&ModelParams::new(m, g, eta)?, &ks)?;
        let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
        let regime = if rows[0].valid_regime { "inside" } else { "outside" };
        println!("eta = {eta:8.0e}  max |E_exact - E_pert| = {worst:.3e}  ({regime} the weak-coupling regime)");
    }

    let rows = compare_perturbative(&ModelParams::new(m, g, 1e-5)?, &ks)?;
    println!("\n{:>3} {:>20} {:>20}", "k", "exact", "perturbative");
    for r in rows {
        println!("{:>3} {:>20.12e} {:>20.12e}", r.k, r.energy_exact, r.energy_pert);
    }
    Ok(())
}
