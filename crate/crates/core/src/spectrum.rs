//! Ground state across multiplets, level crossings, and the small-`η`
//! perturbative predictions.
//!
//! The ground state lives in the multiplet `k*` whose lowest energy `E_k` is
//! smallest. As `g` grows, `E_k` of successive multiplets cross and `k*`
//! climbs a staircase; at small `η` the crossings sit near
//! `g_k ≈ √(M / (M − 2k + 2))` and `k* ≈ ⌈(M/2)(1 − 1/g²)⌉`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::block::build_block;
use crate::error::{Error, Result};
use crate::params::{BlockIndex, ModelParams};
use crate::tridiag::{lowest_eigenpair, DEFAULT_TOL};

/// Lowest eigenpair of one multiplet. `coeffs[n]` is the amplitude of
/// `|k−n photons, n excited atoms⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockGroundState {
    pub k: BlockIndex,
    pub energy: f64,
    pub coeffs: Vec<f64>,
}

pub fn block_ground_energy(params: &ModelParams, k: BlockIndex) -> Result<BlockGroundState> {
    let block = build_block(params, k);
    let sol = lowest_eigenpair(&block.diag, &block.sub, DEFAULT_TOL)?;
    // Off-diagonals are non-positive, so the lowest eigenvector has uniform
    // sign and the solver already returns it positive.
    Ok(BlockGroundState {
        k,
        energy: sol.value,
        coeffs: sol.vector,
    })
}

/// Energies closer than this (relative to `1 + |E|`) count as degenerate and
/// the smaller `k` wins.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// How far [`find_kstar`] scans and when it may stop early.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanPolicy {
    /// Largest multiplet examined; defaults to `8M`.
    pub k_max: Option<usize>,
    /// Consecutive increases of `E_k` (beyond `k = M`) required to stop;
    /// defaults to `M`.
    pub window: Option<usize>,
}

impl ScanPolicy {
    pub fn with_k_max(k_max: usize) -> Self {
        Self {
            k_max: Some(k_max),
            window: None,
        }
    }

    fn resolve(&self, m: usize) -> (usize, usize) {
        (self.k_max.unwrap_or(8 * m), self.window.unwrap_or(m).max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateResult {
    pub params: ModelParams,
    pub k_star: usize,
    pub energy: f64,
    pub coeffs: Vec<f64>,
    pub scanned_k_max: usize,
}

/// Global ground state: scan multiplets upward from `k = 0`, keeping the
/// running minimum.
///
/// The scan stops once `k > M`, the current energy exceeds the minimum, and
/// `E_k` has increased for `window` consecutive multiplets. Past `k = M` the
/// photon energy grows linearly while the exchange term grows like `√k`, so a
/// sustained rise certifies that no later multiplet is lower.
pub fn find_kstar(params: &ModelParams, policy: &ScanPolicy) -> Result<GroundStateResult> {
    let m = params.m();
    let (k_max, window) = policy.resolve(m);

    let mut best = block_ground_energy(params, BlockIndex(0))?;
    let mut prev = best.energy;
    let mut rising = 0usize;
    for k in 1..=k_max {
        let state = block_ground_energy(params, BlockIndex(k))?;
        let e = state.energy;
        if e < best.energy - TIE_TOLERANCE * (1.0 + best.energy.abs()) {
            best = state;
        }
        rising = if e > prev { rising + 1 } else { 0 };
        prev = e;
        if k > m && e > best.energy && rising >= window {
            return Ok(GroundStateResult {
                params: *params,
                k_star: best.k.0,
                energy: best.energy,
                coeffs: best.coeffs,
                scanned_k_max: k,
            });
        }
    }
    Err(Error::CapExhausted { k_max })
}

/// Second-order small-`η` estimate of `E_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbativePrediction {
    pub k: usize,
    pub energy_pert: f64,
    /// `η ≤ 0.05` and `g√η ≤ 0.3`.
    pub valid_regime: bool,
}

pub const VALID_ETA_MAX: f64 = 0.05;
pub const VALID_G_SQRT_ETA_MAX: f64 = 0.3;

pub fn in_perturbative_regime(params: &ModelParams) -> bool {
    params.eta() <= VALID_ETA_MAX && params.g() * params.eta().sqrt() <= VALID_G_SQRT_ETA_MAX
}

/// Evaluates
///
/// ```text
/// E_k = η (k − M/2 − g² k (1 − (k−1)/M))   for k ≤ M
/// E_k = k − M + η (M/2 − g²)               for k > M
/// ```
///
/// The `k > M` branch is kept in its published form. A direct second-order
/// computation gives `−g²(k − M + 1)` instead of `−g²`; exact numerics are
/// the reference either way.
pub fn perturbative_energy(params: &ModelParams, k: usize) -> PerturbativePrediction {
    let m = params.m() as f64;
    let (g, eta) = (params.g(), params.eta());
    let kf = k as f64;
    let energy_pert = if k <= params.m() {
        eta * (kf - m / 2.0 - g * g * kf * (1.0 - (kf - 1.0) / m))
    } else {
        kf - m + eta * (m / 2.0 - g * g)
    };
    PerturbativePrediction {
        k,
        energy_pert,
        valid_regime: in_perturbative_regime(params),
    }
}

/// `⌈(M/2)(1 − 1/g²)⌉` clamped to `[0, M]`.
///
/// A relative slack of `1e-9` keeps the exact crossing values `g = g_k` on
/// the `k − 1` side, consistent with the scan's tie-break.
pub fn kstar_perturbative(params: &ModelParams) -> usize {
    let g = params.g();
    if g <= 0.0 {
        return 0;
    }
    let x = params.half_m() * (1.0 - 1.0 / (g * g));
    let k = (x - 1e-9 * x.abs().max(1.0)).ceil();
    k.clamp(0.0, params.m() as f64) as usize
}

/// Perturbative crossing between multiplets `k − 1` and `k`,
/// `√(M / (M − 2k + 2))`; `None` when no crossing is predicted.
pub fn crossing_g_perturbative(m: usize, k: usize) -> Option<f64> {
    let denom = m as f64 - 2.0 * k as f64 + 2.0;
    (k > 0 && denom > 0.0).then(|| (m as f64 / denom).sqrt())
}

/// Absolute tolerance in `g` for [`find_crossing`].
pub const CROSSING_G_TOL: f64 = 1e-12;

/// Coupling `g_k` at which `E_k` meets `E_(k−1)`, by bisection on
/// `E_k(g) − E_(k−1)(g)`.
///
/// Without an explicit bracket the search covers the perturbative estimate
/// ±50%. The returned endpoint is the one where `E_(k−1) ≤ E_k`, so
/// [`find_kstar`] evaluated there reports `k − 1`.
pub fn find_crossing(m: usize, eta: f64, k: usize, bracket: Option<(f64, f64)>) -> Result<f64> {
    let base = ModelParams::new(m, 0.0, eta)?;
    if k == 0 {
        return Err(Error::Domain("crossings are defined for k >= 1".into()));
    }
    let (lo, hi) = match bracket {
        Some(b) => b,
        None => {
            let g = crossing_g_perturbative(m, k).ok_or_else(|| {
                Error::Domain(format!("no perturbative crossing for k = {k}, M = {m}; supply a bracket"))
            })?;
            (0.5 * g, 1.5 * g)
        }
    };
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
        return Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")));
    }

    let gap = |g: f64| -> Result<f64> {
        let p = base.with_g(g)?;
        let upper = block_ground_energy(&p, BlockIndex(k))?.energy;
        let lower = block_ground_energy(&p, BlockIndex(k - 1))?.energy;
        Ok(upper - lower)
    };

    let (f_lo, f_hi) = (gap(lo)?, gap(hi)?);
    // `low_side` holds E_(k−1) ≤ E_k, `high_side` the opposite.
    let (mut low_side, mut high_side) = match (f_lo >= 0.0, f_hi >= 0.0) {
        (true, false) => (lo, hi),
        (false, true) => (hi, lo),
        _ => return Err(Error::Bracket { k, lo, hi }),
    };
    while (high_side - low_side).abs() > CROSSING_G_TOL {
        let mid = 0.5 * (low_side + high_side);
        if mid == low_side || mid == high_side {
            break;
        }
        if gap(mid)? >= 0.0 {
            low_side = mid;
        } else {
            high_side = mid;
        }
    }
    Ok(low_side)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingEntry {
    pub k: usize,
    /// `None` when root finding failed on the default bracket.
    pub g_exact: Option<f64>,
    /// `None` beyond `k = M/2 + 1`, where no crossing is predicted.
    pub g_pert: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingTable {
    pub m: usize,
    pub eta: f64,
    pub entries: Vec<CrossingEntry>,
}

/// Crossings for `k_from..=k_to`, computed independently per `k`.
pub fn crossing_table(m: usize, eta: f64, k_from: usize, k_to: usize) -> Result<CrossingTable> {
    ModelParams::new(m, 0.0, eta)?;
    if k_from == 0 || k_from > k_to {
        return Err(Error::Domain(format!("invalid crossing range {k_from}..={k_to}")));
    }
    let entries = (k_from..=k_to)
        .into_par_iter()
        .map(|k| CrossingEntry {
            k,
            g_exact: find_crossing(m, eta, k, None).ok(),
            g_pert: crossing_g_perturbative(m, k),
        })
        .collect();
    Ok(CrossingTable { m, eta, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaircasePoint {
    pub g: f64,
    /// `None` if the scan cap was exhausted at this point.
    pub k_star: Option<usize>,
}

/// `k*` along an ascending grid of couplings at fixed `M` and `η`.
pub fn staircase(m: usize, eta: f64, g_grid: &[f64], policy: &ScanPolicy) -> Result<Vec<StaircasePoint>> {
    let base = ModelParams::new(m, 0.0, eta)?;
    if g_grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Domain("coupling grid must be sorted ascending".into()));
    }
    let params = g_grid
        .iter()
        .map(|&g| base.with_g(g))
        .collect::<Result<Vec<_>>>()?;
    params
        .par_iter()
        .map(|p| match find_kstar(p, policy) {
            Ok(r) => Ok(StaircasePoint {
                g: p.g(),
                k_star: Some(r.k_star),
            }),
            Err(Error::CapExhausted { .. }) => Ok(StaircasePoint {
                g: p.g(),
                k_star: None,
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Exact multiplet energy next to its perturbative estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbRow {
    pub k: usize,
    pub energy_exact: f64,
    pub energy_pert: f64,
    pub abs_diff: f64,
    pub valid_regime: bool,
}

pub fn compare_perturbative(params: &ModelParams, ks: &[usize]) -> Result<Vec<PerturbRow>> {
    ks.iter()
        .map(|&k| {
            let exact = block_ground_energy(params, BlockIndex(k))?.energy;
            let pert = perturbative_energy(params, k);
            Ok(PerturbRow {
                k,
                energy_exact: exact,
                energy_pert: pert.energy_pert,
                abs_diff: (exact - pert.energy_pert).abs(),
                valid_regime: pert.valid_regime,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(m: usize, g: f64, eta: f64) -> ModelParams {
        ModelParams::new(m, g, eta).unwrap()
    }

    fn energy(params: &ModelParams, k: usize) -> f64 {
        block_ground_energy(params, BlockIndex(k)).unwrap().energy
    }

    #[test]
    fn block_examples() {
        let s = block_ground_energy(&p(2, 0.5, 0.3), BlockIndex(0)).unwrap();
        assert_abs_diff_eq!(s.energy, -0.3, epsilon = 1e-15);
        assert_eq!(s.coeffs, vec![1.0]);

        let closed = 0.495 - (0.495f64 * 0.495 + 0.04).sqrt();
        assert_abs_diff_eq!(energy(&p(2, 2.0, 0.01), 1), closed, epsilon = 1e-14);
        assert_abs_diff_eq!(closed, -0.038_877_3, epsilon = 1e-7);

        assert_abs_diff_eq!(energy(&p(2, 1.0, 0.01), 1), -0.01, epsilon = 1e-14);
    }

    #[test]
    fn coefficients_positive_and_normalised() {
        for &(m, g, eta) in &[(5, 0.3, 0.2), (16, 2.5, 1e-3), (64, 6.0, 1e-5), (9, 1.0, 0.9)] {
            let params = p(m, g, eta);
            for k in 1..3 * m {
                let s = block_ground_energy(&params, BlockIndex(k)).unwrap();
                assert!(s.coeffs.iter().all(|&a| a > 0.0), "M={m} k={k}");
                let norm: f64 = s.coeffs.iter().map(|a| a * a).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_coupling_block_minimum_is_smallest_diagonal() {
        let params = p(6, 0.0, 0.4);
        for k in 0..20 {
            let diag_min = (0..=k.min(6))
                .map(|n| (k - n) as f64 + 0.4 * (n as f64 - 3.0))
                .fold(f64::INFINITY, f64::min);
            assert_abs_diff_eq!(energy(&params, k), diag_min, epsilon = 1e-14);
        }
    }

    #[test]
    fn weak_coupling_ground_state_is_vacuum() {
        let r = find_kstar(&p(64, 0.5, 0.01), &ScanPolicy::default()).unwrap();
        assert_eq!(r.k_star, 0);
        assert_abs_diff_eq!(r.energy, -0.32, epsilon = 1e-14);
        assert_eq!(r.coeffs, vec![1.0]);
        assert!(r.scanned_k_max > 64);
    }

    #[test]
    fn kstar_matches_ceiling_formula() {
        // g = 2 is exactly the perturbative crossing g_25; at finite eta the
        // exact crossing sits just below it (E_25 - E_24 = -7.687e-10).
        let r = find_kstar(&p(64, 2.0, 1e-5), &ScanPolicy::default()).unwrap();
        assert_eq!(r.k_star, 25);
        assert_eq!(kstar_perturbative(&p(64, 2.0, 1e-5)), 24);
        let r = find_kstar(&p(64, 1.99, 1e-5), &ScanPolicy::default()).unwrap();
        assert_eq!(r.k_star, 24);
        let r = find_kstar(&p(64, 6.0, 1e-5), &ScanPolicy::default()).unwrap();
        assert_eq!(r.k_star, 32);
    }

    #[test]
    fn ground_energy_is_scan_minimum() {
        let params = p(8, 2.3, 0.02);
        let r = find_kstar(&params, &ScanPolicy::default()).unwrap();
        for k in 0..=r.scanned_k_max {
            assert!(r.energy <= energy(&params, k));
        }
    }

    #[test]
    fn cap_exhaustion_is_reported() {
        let err = find_kstar(&p(4, 3.0, 0.5), &ScanPolicy::with_k_max(5)).unwrap_err();
        assert!(matches!(err, Error::CapExhausted { k_max: 5 }));
    }

    #[test]
    fn perturbative_examples() {
        let e = perturbative_energy(&p(64, 0.7, 0.02), 0).energy_pert;
        assert_abs_diff_eq!(e, -0.64, epsilon = 1e-15);
        let e = perturbative_energy(&p(64, 1.5, 1e-4), 10).energy_pert;
        assert_abs_diff_eq!(e, 1e-4 * (-22.0 - 22.5 * (1.0 - 9.0 / 64.0)), epsilon = 1e-16);
        assert_abs_diff_eq!(e, -4.1336e-3, epsilon = 1e-7);
        let pp = perturbative_energy(&p(4, 1.0, 1e-3), 6);
        assert_abs_diff_eq!(pp.energy_pert, 2.001, epsilon = 1e-15);
        assert!(pp.valid_regime);
        assert!(!perturbative_energy(&p(4, 10.0, 1e-2), 2).valid_regime);
    }

    #[test]
    fn ceiling_formula_examples() {
        assert_eq!(kstar_perturbative(&p(64, 0.9, 1e-3)), 0);
        assert_eq!(kstar_perturbative(&p(64, 2f64.sqrt(), 1e-3)), 16);
        assert_eq!(kstar_perturbative(&p(64, 10.0, 1e-3)), 32);
        assert_eq!(kstar_perturbative(&p(64, 0.0, 1e-3)), 0);
        for k in 1..=32 {
            let g = crossing_g_perturbative(64, k).unwrap();
            assert_eq!(kstar_perturbative(&p(64, g, 1e-3)), k - 1, "k={k}");
        }
    }

    #[test]
    fn first_crossing_is_exactly_one() {
        for m in [2, 4, 8, 16, 64] {
            for eta in [1e-4, 1e-2, 0.5] {
                let params = p(m, 1.0, eta);
                assert!((energy(&params, 1) - energy(&params, 0)).abs() <= 1e-10);
            }
        }
        let g1 = find_crossing(2, 0.1, 1, None).unwrap();
        assert_abs_diff_eq!(g1, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn crossings_near_perturbative_positions() {
        let g2 = find_crossing(64, 1e-6, 2, None).unwrap();
        assert_abs_diff_eq!(g2, (64.0f64 / 62.0).sqrt(), epsilon = 1e-4);
        let g32 = find_crossing(64, 1e-6, 32, None).unwrap();
        assert_abs_diff_eq!(g32, 32f64.sqrt(), epsilon = 1e-2);
    }

    #[test]
    fn crossing_bracket_error() {
        let err = find_crossing(8, 1e-3, 2, Some((0.1, 0.2))).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
        assert!(find_crossing(8, 1e-3, 0, None).is_err());
        assert!(find_crossing(8, 1e-3, 6, None).is_err());
    }

    #[test]
    fn crossing_residual_and_tie_break() {
        for (m, eta) in [(2, 0.1), (8, 1e-3), (16, 1e-4)] {
            for k in 1..=m / 2 {
                let gk = find_crossing(m, eta, k, None).unwrap();
                let params = p(m, gk, eta);
                assert!((energy(&params, k) - energy(&params, k - 1)).abs() <= 1e-9);
                let r = find_kstar(&params, &ScanPolicy::default()).unwrap();
                assert_eq!(r.k_star, k - 1, "M={m} eta={eta} k={k}");
            }
        }
    }

    #[test]
    fn crossings_increase_and_converge() {
        for m in [8, 16, 32] {
            let mut prev_err = f64::INFINITY;
            for eta in [1e-2, 1e-3, 1e-4, 1e-5] {
                let table = crossing_table(m, eta, 1, m / 2).unwrap();
                let gs: Vec<f64> = table.entries.iter().map(|e| e.g_exact.unwrap()).collect();
                if eta <= 1e-3 {
                    assert!(gs.windows(2).all(|w| w[0] < w[1]), "M={m} eta={eta}");
                }
                let err = table
                    .entries
                    .iter()
                    .map(|e| (e.g_exact.unwrap() - e.g_pert.unwrap()).abs())
                    .fold(0.0, f64::max);
                assert!(err < prev_err, "M={m} eta={eta}: {err} >= {prev_err}");
                prev_err = err;
            }
        }
    }

    #[test]
    fn energies_non_increasing_in_g() {
        let grid: Vec<f64> = (0..40).map(|i| 0.1 * i as f64).collect();
        for eta in [1e-3, 0.1, 0.7] {
            for k in 1..12 {
                let es: Vec<f64> = grid.iter().map(|&g| energy(&p(6, g, eta), k)).collect();
                assert!(es.windows(2).all(|w| w[1] <= w[0] + 1e-14));
            }
        }
    }

    #[test]
    fn staircase_examples() {
        let s = staircase(64, 1e-5, &[0.5, 0.9], &ScanPolicy::default()).unwrap();
        assert!(s.iter().all(|pt| pt.k_star == Some(0)));
        let s = staircase(64, 1e-5, &[1.2], &ScanPolicy::default()).unwrap();
        assert_eq!(s[0].k_star, Some(10));
        for eta in [1e-4, 0.1] {
            let s = staircase(2, eta, &[1.5], &ScanPolicy::default()).unwrap();
            assert_eq!(s[0].k_star, Some(1));
        }
        // superradiant: the second multiplet takes over
        let s = staircase(2, 0.8, &[1.5], &ScanPolicy::default()).unwrap();
        assert_eq!(s[0].k_star, Some(2));
        assert!(staircase(4, 0.1, &[1.0, 0.5], &ScanPolicy::default()).is_err());
    }

    #[test]
    fn staircase_monotone() {
        for (m, eta) in [(16, 1e-4), (16, 1e-2), (32, 1e-3), (7, 0.2)] {
            let grid: Vec<f64> = (0..120).map(|i| 0.5 + 0.05 * i as f64).collect();
            let s = staircase(m, eta, &grid, &ScanPolicy::default()).unwrap();
            let ks: Vec<usize> = s.iter().filter_map(|pt| pt.k_star).collect();
            assert!(ks.windows(2).all(|w| w[0] <= w[1]), "M={m} eta={eta}");
        }
    }

    #[test]
    fn perturbative_remainder_shrinks() {
        let mut ratios = Vec::new();
        for eta in [1e-2, 1e-3, 1e-4, 1e-5] {
            let params = p(16, 1.5, eta);
            let k = kstar_perturbative(&params);
            let row = compare_perturbative(&params, &[k]).unwrap()[0];
            ratios.push(row.abs_diff / eta.powf(1.5));
        }
        for w in ratios.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-6), "{ratios:?}");
        }
    }
}
