use dicke_control::params::ModelParams;
use dicke_control::spectrum::{kstar_perturbative, staircase, ScanPolicy};

fn mean_deviation(m: usize, eta: f64, grid: &[f64]) -> f64 {
    let points = staircase(m, eta, grid, &ScanPolicy::default()).unwrap();
    let total: usize = points
        .iter()
        .map(|p| {
            let pert = kstar_perturbative(&ModelParams::new(m, p.g, eta).unwrap());
            p.k_star.expect("scan within cap").abs_diff(pert)
        })
        .sum();
    total as f64 / points.len() as f64
}

#[test]
fn staircase_approaches_ceiling_formula_as_eta_shrinks() {
    let grid: Vec<f64> = (0..=89).map(|i| 1.05 + 0.05 * i as f64).collect();
    let devs: Vec<f64> = [1e-1, 1e-3, 1e-5].iter().map(|&eta| mean_deviation(64, eta, &grid)).collect();
    println!("mean |k*_exact - k*_pert| at eta = 1e-1, 1e-3, 1e-5: {devs:?}");
    assert!(devs[0] > devs[1], "{devs:?}");
    assert!(devs[1] > devs[2], "{devs:?}");
    assert!(devs[2] < 0.05, "{devs:?}");
}
