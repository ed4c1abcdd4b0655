//! Locate the ground-state multiplet k* and print its Dicke-state weights.
//!
//!     cargo run --example ground_state -- 64 6.0 1e-3

use dicke_control::entanglement::{dicke_weights, photon_distribution};
use dicke_control::params::ModelParams;
use dicke_control::spectrum::{find_kstar, kstar_perturbative, ScanPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(64), |s| s.parse())?;
    let g: f64 = args.get(1).map_or(Ok(6.0), |s| s.parse())?;
    let eta: f64 = args.get(2).map_or(Ok(1e-3), |s| s.parse())?;

    let params = ModelParams::new(m, g, eta)?;
    let gs = find_kstar(&params, &ScanPolicy::default())?;
    println!("k* = {} (perturbative estimate {})", gs.k_star, kstar_perturbative(&params));
    println!("E0 = {:.12}  (scanned up to k = {})", gs.energy, gs.scanned_k_max);

    let w = dicke_weights(&gs);
    let (n_best, w_best) = w
        .weights
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(n, &x)| (n, x))
        .unwrap_or((0, 0.0));
    println!("largest Dicke weight: w_{n_best} = {w_best:.6}");

    // photon-number distribution, which is the same data seen from the cavity
    for (photons, p) in photon_distribution(&gs).iter().take(6) {
        println!("  P(n_photons = {photons:>2}) = {p:.6e}");
    }
    Ok(())
}
