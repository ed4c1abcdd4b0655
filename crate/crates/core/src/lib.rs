//! Ground states of the Tavis-Cummings model, one excitation multiplet at a
//! time.
//!
//! The Hamiltonian conserves the excitation number, so each multiplet `k`
//! is a small symmetric tridiagonal matrix ([`block`]). The ground state
//! lives in the multiplet `k*` with the lowest bottom eigenvalue
//! ([`spectrum`]); its coefficients are the Dicke-state weights of the
//! atoms ([`entanglement`]). [`oracle`] rebuilds the full Hamiltonian densely
//! as a cross-check, and [`sweep`], [`io`] and [`cli`] drive parameter scans.
//!
//! ```
//! use dicke_control::params::ModelParams;
//! use dicke_control::spectrum::{find_kstar, ScanPolicy};
//!
//! let gs = find_kstar(&ModelParams::new(64, 6.0, 1e-4)?, &ScanPolicy::default())?;
//! assert_eq!(gs.k_star, 32);
//! # Ok::<(), dicke_control::error::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod block;
pub mod error;
pub mod params;
pub mod tridiag;
pub mod spectrum;
pub mod entanglement;
pub mod protocol;
pub mod oracle;
pub mod sweep;
pub mod io;
pub mod cli;
