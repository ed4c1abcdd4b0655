//! Herald a Dicke state by measuring zero photons in the ground state.
//!
//!     cargo run --example protocol -- 2 2.0 0.01 100000 7

use dicke_control::params::ModelParams;
use dicke_control::protocol::run_protocol;
use dicke_control::spectrum::{find_kstar, ScanPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(2), |s| s.parse())?;
    let g: f64 = args.get(1).map_or(Ok(2.0), |s| s.parse())?;
    let eta: f64 = args.get(2).map_or(Ok(0.01), |s| s.parse())?;
    let samples: u64 = args.get(3).map_or(Ok(100_000), |s| s.parse())?;
    let seed: u64 = args.get(4).map_or(Ok(7), |s| s.parse())?;

    let gs = find_kstar(&ModelParams::new(m, g, eta)?, &ScanPolicy::default())?;
    let r = run_protocol(&gs, samples, seed)?;
    if r.structurally_impossible {
        println!("k* = {} exceeds M = {m}; zero photons is never observed", r.k_star);
        return Ok(());
    }
    let p = r.theoretical_rate;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt();
    println!("target |D^{m}_{}>", r.k_star);
    println!("success rate {:.6} (expected {p:.6} +- {sigma:.1e})", r.empirical_rate);
    if let Some(a) = r.mean_attempts_to_success {
        println!("mean preparations per heralded state: {a:.4}");
    }
    Ok(())
}
