//! Restriction of the Hamiltonian to one excitation multiplet.
//!
//! Within multiplet `k` the basis state with index `n = 0..=min(k, M)` is
//! `|k−n photons, M₃ = n − M/2⟩`. The Hamiltonian is tridiagonal there:
//!
//! ```text
//! H[n][n]   = (k − n) + η (n − M/2)
//! H[n][n−1] = −(g √η / √M) √((k − n + 1) · n · (M − n + 1))
//! ```
//!
//! The off-diagonal follows from `a†|p⟩ = √(p+1)|p+1⟩` and
//! `S₋|S, m⟩ = √(S(S+1) − m(m−1)) |S, m−1⟩` with `S = M/2`.

use serde::{Deserialize, Serialize};

use crate::params::{BlockIndex, ModelParams};

/// Symmetric tridiagonal matrix of one multiplet: diagonal plus sub-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockMatrix {
    pub k: BlockIndex,
    pub diag: Vec<f64>,
    /// `sub[n−1]` couples basis states `n−1` and `n`.
    pub sub: Vec<f64>,
}

impl BlockMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }
}

/// One basis label of a multiplet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub photons: usize,
    /// Eigenvalue of `S₃`, half-integral for odd `M`.
    pub m3: f64,
}

pub fn build_block(params: &ModelParams, k: BlockIndex) -> BlockMatrix {
    let m = params.m();
    let eta = params.eta();
    let half_m = params.half_m();
    let c = params.exchange_strength();
    let dim = k.dim(m);
    let kf = k.0 as f64;

    let diag = (0..dim)
        .map(|n| {
            let n = n as f64;
            (kf - n) + eta * (n - half_m)
        })
        .collect();
    let sub = (1..dim)
        .map(|n| {
            let photons_after = (k.0 - n + 1) as f64;
            let n_f = n as f64;
            let spin = n_f * (m - n + 1) as f64;
            -c * (photons_after * spin).sqrt()
        })
        .collect();

    BlockMatrix { k, diag, sub }
}

/// `(photon count, M₃)` for each basis index of multiplet `k`.
pub fn basis_labels(params: &ModelParams, k: BlockIndex) -> Vec<BasisLabel> {
    let half_m = params.half_m();
    (0..k.dim(params.m()))
        .map(|n| BasisLabel {
            photons: k.0 - n,
            m3: n as f64 - half_m,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, g: f64, eta: f64) -> ModelParams {
        ModelParams::new(m, g, eta).unwrap()
    }

    #[test]
    fn vacuum_block() {
        let b = build_block(&p(2, 0.7, 0.3), BlockIndex(0));
        assert_eq!(b.diag, vec![-0.3]);
        assert!(b.sub.is_empty());
    }

    #[test]
    fn two_atom_single_excitation() {
        let b = build_block(&p(2, 2.0, 0.01), BlockIndex(1));
        assert!((b.diag[0] - 0.99).abs() < 1e-15);
        assert_eq!(b.diag[1], 0.0);
        assert!((b.sub[0] + 0.2).abs() < 1e-15);
    }

    #[test]
    fn dimension_caps_at_m_plus_one() {
        let b = build_block(&p(64, 1.3, 0.02), BlockIndex(200));
        assert_eq!(b.dim(), 65);
        assert_eq!(b.sub.len(), 64);
    }

    #[test]
    fn off_diagonals_negative_for_positive_coupling() {
        for k in 1..20 {
            let b = build_block(&p(7, 0.4, 0.1), BlockIndex(k));
            assert!(b.sub.iter().all(|&s| s < 0.0));
        }
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let params = p(5, 0.0, 0.37);
        for k in 0..15 {
            let b = build_block(&params, BlockIndex(k));
            assert!(b.sub.iter().all(|&s| s == 0.0));
        }
    }

    #[test]
    fn labels() {
        let two = p(2, 1.0, 0.1);
        let l: Vec<_> = basis_labels(&two, BlockIndex(1))
            .iter()
            .map(|b| (b.photons, b.m3))
            .collect();
        assert_eq!(l, vec![(1, -1.0), (0, 0.0)]);
        let l: Vec<_> = basis_labels(&two, BlockIndex(3))
            .iter()
            .map(|b| (b.photons, b.m3))
            .collect();
        assert_eq!(l, vec![(3, -1.0), (2, 0.0), (1, 1.0)]);
        let l: Vec<_> = basis_labels(&p(4, 1.0, 0.1), BlockIndex(2))
            .iter()
            .map(|b| (b.photons, b.m3))
            .collect();
        assert_eq!(l, vec![(2, -2.0), (1, -1.0), (0, 0.0)]);
    }

    #[test]
    fn excitation_number_conserved() {
        for m in 1..=9 {
            let params = p(m, 1.0, 0.2);
            for k in 0..=3 * m {
                for label in basis_labels(&params, BlockIndex(k)) {
                    let total = label.photons as f64 + label.m3 + m as f64 / 2.0;
                    assert_eq!(total, k as f64);
                }
            }
        }
    }
}
