//! Model parameters. Energies are measured in units of the cavity frequency.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the rescaled Tavis-Cummings Hamiltonian
///
/// ```text
/// H = a†a + η S₃ − (g √η / √M) (a† S₋ + a S₊)
/// ```
///
/// with `M` two-level atoms, coupling `g` and frequency ratio `η = ω_z/ω_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ModelParams {
    m: usize,
    g: f64,
    eta: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    m: usize,
    g: f64,
    eta: f64,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        ModelParams::new(raw.m, raw.g, raw.eta)
    }
}

impl From<ModelParams> for RawParams {
    fn from(p: ModelParams) -> Self {
        RawParams {
            m: p.m,
            g: p.g,
            eta: p.eta,
        }
    }
}

impl ModelParams {
    pub fn new(m: usize, g: f64, eta: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("number of atoms M must be at least 1".into()));
        }
        if !g.is_finite() || g < 0.0 {
            return Err(Error::Domain(format!("coupling g must be finite and >= 0, got {g}")));
        }
        if !eta.is_finite() || eta <= 0.0 {
            return Err(Error::Domain(format!("frequency ratio eta must be finite and > 0, got {eta}")));
        }
        Ok(Self { m, g, eta })
    }

    /// Number of atoms.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Same system with a different coupling.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(self.m, g, self.eta)
    }

    /// Prefactor `g √η / √M` of the exchange term.
    pub fn exchange_strength(&self) -> f64 {
        self.g * self.eta.sqrt() / (self.m as f64).sqrt()
    }

    /// `M/2`, possibly half-integral.
    pub fn half_m(&self) -> f64 {
        self.m as f64 / 2.0
    }
}

/// Total excitation number `k = n_photons + M₃ + M/2`, labelling one
/// conserved multiplet of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockIndex(pub usize);

impl BlockIndex {
    /// Dimension `min(k+1, M+1)` of the multiplet.
    pub fn dim(self, m: usize) -> usize {
        self.0.min(m) + 1
    }
}

impl From<usize> for BlockIndex {
    fn from(k: usize) -> Self {
        BlockIndex(k)
    }
}
