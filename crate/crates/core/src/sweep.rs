//! Parameter sweeps over the `(g, η)` plane.
//!
//! Every grid point is solved independently and written back by index, so
//! the result does not depend on evaluation order or thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::dicke_weights;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectrum::{find_kstar, ScanPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(min: f64, max: f64, steps: usize) -> Self {
        Self {
            min,
            max,
            steps,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(min: f64, max: f64, steps: usize) -> Self {
        Self {
            min,
            max,
            steps,
            spacing: Spacing::Log,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Domain(format!("{name} axis needs at least one step")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::Domain(format!("{name} axis bounds must be finite")));
        }
        let ordered = if self.steps == 1 { self.min <= self.max } else { self.min < self.max };
        if !ordered {
            return Err(Error::Domain(format!(
                "{name} axis needs min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::Domain(format!("log-spaced {name} axis needs min > 0")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Quantity {
    KStar,
    /// Dicke weight `w_n` of the atomic reduced state; zero when `n`
    /// lies outside the ground multiplet.
    Weight { n: usize },
    Energy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub m: usize,
    pub g_axis: Axis,
    pub eta_axis: Axis,
    pub quantity: Quantity,
    pub threshold: Option<f64>,
    #[serde(default)]
    pub policy: ScanPolicy,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Domain("M must be at least 1".into()));
        }
        self.g_axis.validate("g")?;
        self.eta_axis.validate("eta")?;
        if self.g_axis.min < 0.0 {
            return Err(Error::Domain("g axis must be non-negative".into()));
        }
        if self.eta_axis.min <= 0.0 {
            return Err(Error::Domain("eta axis must be positive".into()));
        }
        if let Quantity::Weight { n } = self.quantity {
            if n > self.m {
                return Err(Error::Domain(format!("weight index {n} exceeds M = {}", self.m)));
            }
        }
        if let Some(t) = self.threshold {
            if !t.is_finite() {
                return Err(Error::Domain("threshold must be finite".into()));
            }
        }
        Ok(())
    }
}

/// Sweep result on a row-major grid with `η` as the outer index:
/// cell `(i_eta, i_g)` sits at `i_eta * g_steps + i_g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub spec: SweepSpec,
    pub g_values: Vec<f64>,
    pub eta_values: Vec<f64>,
    /// `None` marks a point where the excitation scan was exhausted.
    pub values: Vec<Option<f64>>,
    /// `value >= threshold`; absent without a threshold. Exhausted points
    /// are never in the region.
    pub mask: Option<Vec<bool>>,
    pub region_area_fraction: Option<f64>,
}

impl RegionMap {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(g, η)` of cell `i`.
    pub fn coords(&self, i: usize) -> (f64, f64) {
        let ng = self.g_values.len();
        (self.g_values[i % ng], self.eta_values[i / ng])
    }

    pub fn exhausted_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

fn evaluate(params: &ModelParams, spec: &SweepSpec) -> Result<Option<f64>> {
    let gs = match find_kstar(params, &spec.policy) {
        Ok(gs) => gs,
        Err(Error::CapExhausted { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(match spec.quantity {
        Quantity::KStar => gs.k_star as f64,
        Quantity::Energy => gs.energy,
        Quantity::Weight { n } => dicke_weights(&gs).weight(n),
    }))
}

/// Evaluate the requested quantity on every grid point using the current
/// rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<RegionMap> {
    spec.validate()?;
    let g_values = spec.g_axis.values();
    let eta_values = spec.eta_axis.values();
    let ng = g_values.len();
    let total = ng * eta_values.len();

    let values = (0..total)
        .into_par_iter()
        .map(|i| {
            let params = ModelParams::new(spec.m, g_values[i % ng], eta_values[i / ng])?;
            evaluate(&params, spec)
        })
        .collect::<Result<Vec<_>>>()?;

    let mask = spec.threshold.map(|t| {
        values
            .iter()
            .map(|v| v.is_some_and(|x| x >= t))
            .collect::<Vec<bool>>()
    });
    let region_area_fraction = mask
        .as_ref()
        .map(|m| m.iter().filter(|&&b| b).count() as f64 / total as f64);

    Ok(RegionMap {
        spec: *spec,
        g_values,
        eta_values,
        values,
        mask,
        region_area_fraction,
    })
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<RegionMap> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}
