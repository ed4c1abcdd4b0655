//! Cross-check the multiplet scan against brute-force dense diagonalization
//! in the collective and the full qubit basis.
//!
//!     cargo run --release --example oracle_check

use dicke_control::oracle::compare_backends;
use dicke_control::params::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>2} {:>5} {:>6} {:>3} {:>20} {:>10}", "M", "g", "eta", "k*", "E0", "max diff");
    for m in [2usize, 3, 4] {
        for g in [0.5, 1.5, 3.0] {
            for eta in [0.01, 0.5] {
                let r = compare_backends(&ModelParams::new(m, g, eta)?, 40)?;
                let flag = if r.cutoff_warning { "  (cutoff!)" } else { "" };
                println!(
                    "{m:>2} {g:>5.2} {eta:>6.2} {:>3} {:>20.14} {:>10.2e}{flag}",
                    r.k_star,
                    r.block_scan,
                    r.max_difference()
                );
            }
        }
    }
    Ok(())
}
