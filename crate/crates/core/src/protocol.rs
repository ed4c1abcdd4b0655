//! Prepare-and-measure simulation: cool to the ground state, measure the
//! photon number, keep the atoms on a zero-photon outcome and start over
//! otherwise. A zero-photon outcome leaves the atoms in exactly `|D^M_{k*}⟩`.
//!
//! Random numbers come from `ChaCha8Rng::seed_from_u64(seed)`; every trial
//! consumes exactly one `f64` draw, so a report is reproducible from
//! `(seed, samples)` on any platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::photon_distribution;
use crate::error::{Error, Result};
use crate::spectrum::GroundStateResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub m: usize,
    pub k_star: usize,
    pub samples: u64,
    pub seed: u64,
    pub successes: u64,
    pub empirical_rate: f64,
    /// `w_{k*}`, the probability of measuring zero photons.
    pub theoretical_rate: f64,
    /// Mean number of preparations per successful run; `None` without any
    /// success.
    pub mean_attempts_to_success: Option<f64>,
    /// Set when `k* > M`: every outcome carries photons and the target Dicke
    /// state cannot be reached.
    pub structurally_impossible: bool,
    /// Excitation count of the heralded Dicke state.
    pub dicke_index: Option<usize>,
}

pub fn run_protocol(gs: &GroundStateResult, samples: u64, seed: u64) -> Result<ProtocolReport> {
    if samples == 0 {
        return Err(Error::Domain("protocol needs at least one sample".into()));
    }
    let m = gs.params.m();
    let k = gs.k_star;
    let dist = photon_distribution(gs);
    let impossible = k > m;
    let theoretical_rate = if impossible {
        0.0
    } else {
        dist.iter().find(|(p, _)| *p == 0).map_or(0.0, |(_, w)| *w)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    let mut attempts_in_run = 0u64;
    let mut completed_attempts = 0u64;
    for _ in 0..samples {
        let u: f64 = rng.gen();
        attempts_in_run += 1;
        let photons = sample(&dist, u);
        if photons == 0 {
            successes += 1;
            completed_attempts += attempts_in_run;
            attempts_in_run = 0;
        }
    }

    Ok(ProtocolReport {
        m,
        k_star: k,
        samples,
        seed,
        successes,
        empirical_rate: successes as f64 / samples as f64,
        theoretical_rate,
        mean_attempts_to_success: (successes > 0).then(|| completed_attempts as f64 / successes as f64),
        structurally_impossible: impossible,
        dicke_index: (!impossible).then_some(k),
    })
}

/// Inverse-CDF draw of a photon count for `u ∈ [0, 1)`.
fn sample(dist: &[(usize, f64)], u: f64) -> usize {
    let mut acc = 0.0;
    for &(photons, p) in dist {
        acc += p;
        if u < acc {
            return photons;
        }
    }
    dist.last().map_or(0, |(p, _)| *p)
}
