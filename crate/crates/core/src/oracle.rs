//! Brute-force reference backends.
//!
//! Both build the Hamiltonian as a dense matrix on a photon-truncated space
//! and share no code with the multiplet construction in [`crate::block`]:
//!
//! * the collective backend uses `(M+1)`-dimensional angular-momentum ladder
//!   matrices for `S = M/2`;
//! * the qubit backend sums single-qubit Pauli embeddings over `2^M` states,
//!   so every spin sector is present.
//!
//! Truncating the photon number only removes basis states from multiplets
//! with `k > n_max`, which can only raise their energies. The truncated
//! ground energy is therefore exact whenever `k* ≤ n_max`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectrum::{find_kstar, kstar_perturbative, ScanPolicy};

pub const MAX_DENSE_DIM: usize = 4000;
pub const MAX_QUBITS: usize = 4;
pub const MAX_QUBIT_PHOTONS: usize = 40;
/// Ground-state weight on the two highest Fock levels above which the
/// cutoff is reported unsafe.
pub const CUTOFF_WEIGHT_WARN: f64 = 1e-8;

/// Photon cutoff `k*_pert + M + 10`.
pub fn default_n_max(params: &ModelParams) -> usize {
    kstar_perturbative(params) + params.m() + 10
}

fn annihilation(n_max: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n_max + 1, n_max + 1, |r, c| if c == r + 1 { (c as f64).sqrt() } else { 0.0 })
}

/// `S₊` for spin `S = M/2` in the `|S, m⟩` basis ordered by `m` ascending.
fn spin_raising(m: usize) -> DMatrix<f64> {
    let s = m as f64 / 2.0;
    DMatrix::from_fn(m + 1, m + 1, |r, c| {
        if r == c + 1 {
            let mz = c as f64 - s;
            (s * (s + 1.0) - mz * (mz + 1.0)).sqrt()
        } else {
            0.0
        }
    })
}

fn tavis_cummings(
    photon_dim: usize,
    annihilate: &DMatrix<f64>,
    s_plus: &DMatrix<f64>,
    s_z: &DMatrix<f64>,
    params: &ModelParams,
) -> DMatrix<f64> {
    let spin_dim = s_z.nrows();
    let number = annihilate.transpose() * annihilate;
    let id_photon = DMatrix::<f64>::identity(photon_dim, photon_dim);
    let id_spin = DMatrix::<f64>::identity(spin_dim, spin_dim);
    let s_minus = s_plus.transpose();
    let exchange = annihilate.transpose().kronecker(&s_minus) + annihilate.kronecker(s_plus);
    number.kronecker(&id_spin) + id_photon.kronecker(s_z) * params.eta()
        - exchange * params.exchange_strength()
}

/// Dense Hamiltonian on `(n_max+1)(M+1)` states,
/// basis index `photons · (M+1) + (M₃ + M/2)`.
#[derive(Debug, Clone)]
pub struct TruncatedDenseModel {
    pub m: usize,
    pub n_max: usize,
    pub matrix: DMatrix<f64>,
}

impl TruncatedDenseModel {
    pub fn new(params: &ModelParams, n_max: usize) -> Result<Self> {
        let m = params.m();
        let dim = (n_max + 1) * (m + 1);
        if dim > MAX_DENSE_DIM {
            return Err(Error::Size(format!(
                "truncated dense model has dimension {dim} > {MAX_DENSE_DIM}"
            )));
        }
        let s_z = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(m + 1, |j, _| j as f64 - m as f64 / 2.0));
        let matrix = tavis_cummings(n_max + 1, &annihilation(n_max), &spin_raising(m), &s_z, params);
        Ok(Self { m, n_max, matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// Principal submatrix on states with `photons + M₃ + M/2 = k`.
    pub fn sector(&self, k: usize) -> DMatrix<f64> {
        let idx: Vec<usize> = (0..self.dimension())
            .filter(|i| i / (self.m + 1) + i % (self.m + 1) == k)
            .collect();
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.matrix[(idx[r], idx[c])])
    }

    /// Largest matrix element linking different excitation sectors.
    pub fn cross_sector_leak(&self) -> f64 {
        let sector = |i: usize| i / (self.m + 1) + i % (self.m + 1);
        let mut worst = 0.0f64;
        for r in 0..self.dimension() {
            for c in 0..self.dimension() {
                if sector(r) != sector(c) {
                    worst = worst.max(self.matrix[(r, c)].abs());
                }
            }
        }
        worst
    }
}

/// Ascending eigenvalues of a dense symmetric matrix.
pub fn dense_eigenvalues(matrix: &DMatrix<f64>) -> Vec<f64> {
    let mut vals: Vec<f64> = matrix.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DenseGround {
    pub energy: f64,
    /// Ground-state weight on the two highest photon levels.
    pub top_fock_weight: f64,
    pub cutoff_warning: bool,
}

fn ground_with_cutoff_check(matrix: DMatrix<f64>, photon_of: impl Fn(usize) -> usize, n_max: usize) -> DenseGround {
    let n = matrix.nrows();
    let energy = matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .expect("non-empty matrix");

    // ground vector by inverse iteration just below the lowest eigenvalue,
    // where the shifted matrix is positive definite
    let norm = matrix.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut shift = energy - 1e-9 * (1.0 + norm);
    let chol = loop {
        let shifted = &matrix - DMatrix::<f64>::identity(n, n) * shift;
        match shifted.cholesky() {
            Some(c) => break c,
            None => shift -= 1e-6 * (1.0 + norm),
        }
    };
    let mut vec = nalgebra::DVector::from_element(n, 1.0 / (n as f64).sqrt());
    for _ in 0..3 {
        vec = chol.solve(&vec);
        vec /= vec.norm();
    }
    let top_fock_weight: f64 = vec
        .iter()
        .enumerate()
        .filter(|(i, _)| photon_of(*i) + 1 >= n_max)
        .map(|(_, a)| a * a)
        .sum();
    DenseGround {
        energy,
        top_fock_weight,
        cutoff_warning: top_fock_weight > CUTOFF_WEIGHT_WARN,
    }
}

/// Ground energy of the truncated collective-spin model.
pub fn dense_ground_energy(params: &ModelParams, n_max: usize) -> Result<DenseGround> {
    let model = TruncatedDenseModel::new(params, n_max)?;
    let spin_dim = params.m() + 1;
    Ok(ground_with_cutoff_check(model.matrix, |i| i / spin_dim, n_max))
}

/// Dense Hamiltonian on the full `2^M`-dimensional qubit space times
/// `n_max + 1` photon states. Basis index `photons · 2^M + bits`.
pub fn full_qubit_hamiltonian(params: &ModelParams, n_max: usize) -> Result<DMatrix<f64>> {
    let m = params.m();
    if m > MAX_QUBITS || n_max > MAX_QUBIT_PHOTONS {
        return Err(Error::Size(format!(
            "full qubit backend supports M <= {MAX_QUBITS} and n_max <= {MAX_QUBIT_PHOTONS}; got M={m}, n_max={n_max}"
        )));
    }
    let sigma_plus = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
    let sigma_z = DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]);
    let id2 = DMatrix::<f64>::identity(2, 2);
    // Qubit b is bit b of the index; with Kronecker ordering the highest bit
    // is the leftmost factor.
    let embed = |op: &DMatrix<f64>, qubit: usize| -> DMatrix<f64> {
        let mut out = DMatrix::<f64>::identity(1, 1);
        for b in (0..m).rev() {
            out = out.kronecker(if b == qubit { op } else { &id2 });
        }
        out
    };
    let dim = 1 << m;
    let mut s_plus = DMatrix::<f64>::zeros(dim, dim);
    let mut s_z = DMatrix::<f64>::zeros(dim, dim);
    for q in 0..m {
        s_plus += embed(&sigma_plus, q);
        s_z += embed(&sigma_z, q) * 0.5;
    }
    Ok(tavis_cummings(n_max + 1, &annihilation(n_max), &s_plus, &s_z, params))
}

pub fn full_qubit_ground_energy(params: &ModelParams, n_max: usize) -> Result<DenseGround> {
    let h = full_qubit_hamiltonian(params, n_max)?;
    let qubit_dim = 1usize << params.m();
    Ok(ground_with_cutoff_check(h, |i| i / qubit_dim, n_max))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub params: ModelParams,
    pub n_max: usize,
    pub block_scan: f64,
    pub k_star: usize,
    pub truncated_dense: f64,
    pub full_qubit: f64,
    pub block_vs_dense: f64,
    pub block_vs_qubit: f64,
    pub dense_vs_qubit: f64,
    pub cutoff_warning: bool,
}

impl ComparisonReport {
    pub fn max_difference(&self) -> f64 {
        self.block_vs_dense.max(self.block_vs_qubit).max(self.dense_vs_qubit)
    }
}

/// Ground energy from the multiplet scan and from both dense backends.
pub fn compare_backends(params: &ModelParams, n_max: usize) -> Result<ComparisonReport> {
    let scan = find_kstar(params, &ScanPolicy::default())?;
    let dense = dense_ground_energy(params, n_max)?;
    let qubit = full_qubit_ground_energy(params, n_max)?;
    Ok(ComparisonReport {
        params: *params,
        n_max,
        block_scan: scan.energy,
        k_star: scan.k_star,
        truncated_dense: dense.energy,
        full_qubit: qubit.energy,
        block_vs_dense: (scan.energy - dense.energy).abs(),
        block_vs_qubit: (scan.energy - qubit.energy).abs(),
        dense_vs_qubit: (dense.energy - qubit.energy).abs(),
        cutoff_warning: dense.cutoff_warning || qubit.cutoff_warning,
    })
}
