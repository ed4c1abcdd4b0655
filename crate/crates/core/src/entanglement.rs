//! Dicke states, the entanglement distance, and the Dicke-basis composition
//! of the atomic part of the ground state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::GroundStateResult;

/// Largest qubit count for explicit statevectors.
pub const MAX_STATEVECTOR_QUBITS: usize = 14;

/// `|D^M_n⟩`: the symmetric state of `M` qubits with `n` excitations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DickeIndex {
    m: usize,
    n: usize,
}

impl DickeIndex {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n > m {
            return Err(Error::Domain(format!("Dicke index requires 0 <= n <= M, M >= 1; got M={m}, n={n}")));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Pure state of `M ≤ 14` qubits. Bit `b` of a basis index is qubit `b`,
/// with 1 meaning excited.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitStatevector {
    m: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitStatevector {
    pub fn new(m: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if m == 0 || m > MAX_STATEVECTOR_QUBITS {
            return Err(Error::Size(format!(
                "statevectors support 1..={MAX_STATEVECTOR_QUBITS} qubits, got {m}"
            )));
        }
        if amplitudes.len() != 1 << m {
            return Err(Error::Contract(format!(
                "{m} qubits need {} amplitudes, got {}",
                1usize << m,
                amplitudes.len()
            )));
        }
        Ok(Self { m, amplitudes })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Exchange qubits `a` and `b`.
    pub fn swap_qubits(&self, a: usize, b: usize) -> Self {
        let amplitudes = (0..self.amplitudes.len())
            .map(|i| {
                let (ba, bb) = ((i >> a) & 1, (i >> b) & 1);
                let j = if ba != bb { i ^ (1 << a) ^ (1 << b) } else { i };
                self.amplitudes[j]
            })
            .collect();
        Self {
            m: self.m,
            amplitudes,
        }
    }

    /// `(⟨σ₁⟩, ⟨σ₂⟩, ⟨σ₃⟩)` of one qubit.
    pub fn bloch_vector(&self, qubit: usize) -> [f64; 3] {
        let mask = 1usize << qubit;
        // c = ⟨ψ| |e⟩⟨g| |ψ⟩ on this qubit
        let mut c = Complex64::new(0.0, 0.0);
        let mut z = 0.0;
        for (i, amp) in self.amplitudes.iter().enumerate() {
            if i & mask == 0 {
                c += self.amplitudes[i | mask].conj() * amp;
                z -= amp.norm_sqr();
            } else {
                z += amp.norm_sqr();
            }
        }
        [2.0 * c.re, -2.0 * c.im, z]
    }
}

fn binomial(m: usize, n: usize) -> f64 {
    let n = n.min(m - n);
    (0..n).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

pub fn dicke_statevector(idx: DickeIndex) -> Result<QubitStatevector> {
    let m = idx.m();
    if m > MAX_STATEVECTOR_QUBITS {
        return Err(Error::Size(format!(
            "statevectors support at most {MAX_STATEVECTOR_QUBITS} qubits, got {m}"
        )));
    }
    let amp = binomial(m, idx.n()).powf(-0.5);
    let amplitudes = (0..1usize << m)
        .map(|i| {
            if i.count_ones() as usize == idx.n() {
                Complex64::new(amp, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    QubitStatevector::new(m, amplitudes)
}

/// Entanglement distance per qubit of a pure state,
/// `1 − (1/M) Σ_μ Σ_j ⟨σ_j^μ⟩²`: zero for product states, one when every
/// single-qubit reduced state is maximally mixed.
pub fn entanglement_distance_pure(state: &QubitStatevector) -> Result<f64> {
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Contract(format!("state norm {norm} differs from 1")));
    }
    let m = state.m();
    let bloch_sq: f64 = (0..m)
        .map(|q| state.bloch_vector(q).iter().map(|s| s * s).sum::<f64>())
        .sum();
    Ok((1.0 - bloch_sq / m as f64).clamp(0.0, 1.0))
}

/// Closed form for Dicke states: each qubit has zero transverse Bloch
/// components and `⟨σ₃⟩ = (2n − M)/M`.
pub fn entanglement_distance_dicke(idx: DickeIndex) -> f64 {
    let z = (2.0 * idx.n() as f64 - idx.m() as f64) / idx.m() as f64;
    1.0 - z * z
}

/// Dicke-basis populations `w_n = a_n²` of the atomic reduced state. The
/// reduced state is diagonal in the Dicke basis, `ρ = Σ w_n |D_n⟩⟨D_n|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DickeWeights {
    pub k: usize,
    /// Indexed by excitation count `n = 0..=min(k, M)`.
    pub weights: Vec<f64>,
}

impl DickeWeights {
    /// `w_n`, zero when `n` lies outside the multiplet.
    pub fn weight(&self, n: usize) -> f64 {
        self.weights.get(n).copied().unwrap_or(0.0)
    }
}

pub fn dicke_weights(gs: &GroundStateResult) -> DickeWeights {
    DickeWeights {
        k: gs.k_star,
        weights: gs.coeffs.iter().map(|a| a * a).collect(),
    }
}

/// Photon-number distribution of the ground state, ascending in photon
/// count. `n` excited atoms go with `k* − n` photons.
pub fn photon_distribution(gs: &GroundStateResult) -> Vec<(usize, f64)> {
    let k = gs.k_star;
    gs.coeffs
        .iter()
        .enumerate()
        .rev()
        .map(|(n, a)| (k - n, a * a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::spectrum::{find_kstar, ScanPolicy};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dicke(m: usize, n: usize) -> QubitStatevector {
        dicke_statevector(DickeIndex::new(m, n).unwrap()).unwrap()
    }

    #[test]
    fn dicke_amplitudes() {
        let s = dicke(2, 1);
        let h = 0.5f64.sqrt();
        let re: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
        assert_abs_diff_eq!(re[0], 0.0);
        assert_abs_diff_eq!(re[1], h, epsilon = 1e-15);
        assert_abs_diff_eq!(re[2], h, epsilon = 1e-15);
        assert_abs_diff_eq!(re[3], 0.0);

        let s = dicke(3, 0);
        assert_eq!(s.amplitudes()[0].re, 1.0);
        assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));

        let s = dicke(4, 2);
        let nonzero: Vec<_> = s.amplitudes().iter().filter(|a| a.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 6);
        for a in nonzero {
            assert_abs_diff_eq!(a.re, 1.0 / 6f64.sqrt(), epsilon = 1e-15);
        }
    }

    #[test]
    fn guards() {
        assert!(DickeIndex::new(3, 4).is_err());
        assert!(dicke_statevector(DickeIndex::new(15, 3).unwrap()).is_err());
        assert!(QubitStatevector::new(2, vec![Complex64::new(1.0, 0.0); 3]).is_err());
        let unnormalised = QubitStatevector::new(1, vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!(entanglement_distance_pure(&unnormalised).is_err());
    }

    #[test]
    fn product_state_has_zero_distance() {
        assert_abs_diff_eq!(entanglement_distance_pure(&dicke(5, 0)).unwrap(), 0.0);
        // |+⟩^⊗3
        let amp = Complex64::new((1.0f64 / 8.0).sqrt(), 0.0);
        let plus = QubitStatevector::new(3, vec![amp; 8]).unwrap();
        assert_abs_diff_eq!(entanglement_distance_pure(&plus).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn maximally_entangled_dicke() {
        assert_abs_diff_eq!(entanglement_distance_pure(&dicke(2, 1)).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(entanglement_distance_dicke(DickeIndex::new(64, 32).unwrap()), 1.0);
        assert_eq!(entanglement_distance_dicke(DickeIndex::new(6, 0).unwrap()), 0.0);
    }

    #[test]
    fn odd_m_near_half_filling() {
        // n = (M ± 1)/2 leaves ⟨σ₃⟩ = ±1/M on every qubit
        let e = entanglement_distance_pure(&dicke(3, 2)).unwrap();
        assert_abs_diff_eq!(e, 8.0 / 9.0, epsilon = 1e-14);
        let e = entanglement_distance_dicke(DickeIndex::new(65, 33).unwrap());
        assert_abs_diff_eq!(e, 1.0 - 1.0 / (65.0 * 65.0), epsilon = 1e-15);
    }

    #[test]
    fn closed_form_matches_statevector() {
        for m in 1..=10 {
            for n in 0..=m {
                let idx = DickeIndex::new(m, n).unwrap();
                let sv = entanglement_distance_pure(&dicke_statevector(idx).unwrap()).unwrap();
                assert!((sv - entanglement_distance_dicke(idx)).abs() <= 1e-12, "M={m} n={n}");
            }
        }
    }

    #[test]
    fn permutation_symmetry() {
        for m in 2..=8 {
            for n in 0..=m {
                let s = dicke(m, n);
                for q in 0..m - 1 {
                    assert_eq!(s.swap_qubits(q, q + 1), s);
                }
            }
        }
    }

    #[test]
    fn distance_in_unit_interval_for_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=8 {
            for _ in 0..50 {
                let mut amps: Vec<Complex64> = (0..1 << m)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                amps.iter_mut().for_each(|a| *a /= norm);
                let e = entanglement_distance_pure(&QubitStatevector::new(m, amps).unwrap()).unwrap();
                assert!((0.0..=1.0).contains(&e));
            }
        }
    }

    #[test]
    fn weights_of_vacuum_ground_state() {
        let gs = find_kstar(&ModelParams::new(64, 0.5, 0.01).unwrap(), &ScanPolicy::default()).unwrap();
        assert_eq!(dicke_weights(&gs).weights, vec![1.0]);
        assert_eq!(photon_distribution(&gs), vec![(0, 1.0)]);
    }

    #[test]
    fn two_atom_weights() {
        let gs = find_kstar(&ModelParams::new(2, 2.0, 0.01).unwrap(), &ScanPolicy::default()).unwrap();
        assert_eq!(gs.k_star, 1);
        // lowest eigenvector of [[0.99, -0.2], [-0.2, 0]]: (0.99 - λ) a0 = 0.2 a1
        let lambda = 0.495 - (0.495f64 * 0.495 + 0.04).sqrt();
        let ratio = 0.2 / (0.99 - lambda);
        let w1 = 1.0 / (1.0 + ratio * ratio);
        let w = dicke_weights(&gs);
        assert_abs_diff_eq!(w.weights[1], w1, epsilon = 1e-12);
        assert_abs_diff_eq!(w.weights[0], 1.0 - w1, epsilon = 1e-12);
        assert_abs_diff_eq!(w1, 0.963_590, epsilon = 1e-6);
        let dist = photon_distribution(&gs);
        assert_eq!(dist.len(), 2);
        assert_eq!(dist[0].0, 0);
        assert_abs_diff_eq!(dist[0].1, w1, epsilon = 1e-12);
        assert_eq!(dist[1].0, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 200, rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed0002), ..ProptestConfig::default() })]

        #[test]
        fn weights_form_distribution(m in 1usize..24, g in 0.0f64..4.0, log_eta in -5.0f64..-0.5) {
            let params = ModelParams::new(m, g, 10f64.powf(log_eta)).unwrap();
            let Ok(gs) = find_kstar(&params, &ScanPolicy::default()) else { return Ok(()); };
            let w = dicke_weights(&gs);
            prop_assert_eq!(w.weights.len(), gs.k_star.min(m) + 1);
            prop_assert!(w.weights.iter().all(|&x| x >= 0.0));
            prop_assert!((w.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            if g > 0.0 {
                prop_assert!(gs.coeffs.iter().all(|&a| a > 0.0));
            }
            let dist = photon_distribution(&gs);
            for (photons, prob) in dist {
                prop_assert_eq!(prob, w.weights[gs.k_star - photons]);
            }
        }
    }
}
