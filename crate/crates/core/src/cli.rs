//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or numerical error, 2 usage error.
//! Flags override values from an optional `--config` JSON file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::block::{basis_labels, build_block};
use crate::entanglement::{dicke_weights, photon_distribution, DickeWeights};
use crate::error::Error;
use crate::io::{
    fmt_f64, to_json_string, write_crossings_csv, write_region_csv, write_staircase_csv,
};
use crate::oracle::{compare_backends, default_n_max};
use crate::params::{BlockIndex, ModelParams};
use crate::protocol::run_protocol;
use crate::spectrum::{
    compare_perturbative, crossing_table, find_kstar, kstar_perturbative, staircase,
    GroundStateResult, PerturbRow, ScanPolicy, StaircasePoint,
};
use crate::sweep::{run_sweep, Axis, Quantity, Spacing, SweepSpec};

#[derive(Debug, Parser)]
#[command(name = "dicke-control", version, about = "Tavis-Cummings ground-state control and Dicke-state composition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum QuantityArg {
    KStar,
    Weight,
    Energy,
}

#[derive(Debug, Clone, Args, Default)]
struct Common {
    /// Number of atoms
    #[arg(long)]
    m: Option<usize>,
    /// Coupling g
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Frequency ratio eta = omega_z / omega_c
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest multiplet scanned for the ground state (default 8M)
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    /// Worker threads for grid computations
    #[arg(long)]
    threads: Option<usize>,
    /// JSON file with default values for any flag
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Default)]
struct GridArgs {
    #[arg(long = "g-min", allow_negative_numbers = true)]
    g_min: Option<f64>,
    #[arg(long = "g-max", allow_negative_numbers = true)]
    g_max: Option<f64>,
    #[arg(long = "g-steps")]
    g_steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the tridiagonal matrix of one multiplet
    Block {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Ground-state multiplet k*, energy, Dicke weights
    Ground {
        #[command(flatten)]
        common: Common,
    },
    /// k* along a grid of couplings
    Staircase {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Exact and perturbative level-crossing couplings
    Crossings {
        #[command(flatten)]
        common: Common,
        #[arg(long = "k-from")]
        k_from: Option<usize>,
        #[arg(long = "k-to")]
        k_to: Option<usize>,
    },
    /// k*, a Dicke weight, or the energy over a (g, eta) grid
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "eta-min", allow_negative_numbers = true)]
        eta_min: Option<f64>,
        #[arg(long = "eta-max", allow_negative_numbers = true)]
        eta_max: Option<f64>,
        #[arg(long = "eta-steps")]
        eta_steps: Option<usize>,
        /// Space the eta axis linearly instead of logarithmically
        #[arg(long = "eta-linear")]
        eta_linear: bool,
        #[arg(long, value_enum)]
        quantity: Option<QuantityArg>,
        /// Excitation count n for `--quantity weight` (default M/2 rounded up)
        #[arg(long = "n-target")]
        n_target: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        threshold: Option<f64>,
    },
    /// Simulate repeated photon-number measurements on the ground state
    Protocol {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Exact multiplet energies next to the perturbative formula
    Perturb {
        #[command(flatten)]
        common: Common,
        /// Multiplet; defaults to every k in 0..=M
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compare the multiplet scan with both dense reference backends
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
}

/// Defaults read from `--config`. Keys use the flag names with `_` for `-`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    m: Option<usize>,
    g: Option<f64>,
    eta: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    seed: Option<u64>,
    k_max: Option<usize>,
    threads: Option<usize>,
    k: Option<usize>,
    k_from: Option<usize>,
    k_to: Option<usize>,
    g_min: Option<f64>,
    g_max: Option<f64>,
    g_steps: Option<usize>,
    eta_min: Option<f64>,
    eta_max: Option<f64>,
    eta_steps: Option<usize>,
    eta_linear: Option<bool>,
    quantity: Option<QuantityArg>,
    n_target: Option<usize>,
    threshold: Option<f64>,
    samples: Option<u64>,
    n_max: Option<usize>,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn required<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag --{flag}")))
}

struct Resolved {
    cfg: Config,
    common: Common,
}

impl Resolved {
    fn new(common: Common) -> CliResult<Self> {
        let cfg = match &common.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(Error::io(path, e)))?;
                serde_json::from_str(&text)
                    .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?
            }
            None => Config::default(),
        };
        Ok(Self { cfg, common })
    }

    fn m(&self) -> CliResult<usize> {
        required(self.common.m.or(self.cfg.m), "m")
    }

    fn eta(&self) -> CliResult<f64> {
        required(self.common.eta.or(self.cfg.eta), "eta")
    }

    fn params(&self) -> CliResult<ModelParams> {
        let g = required(self.common.g.or(self.cfg.g), "g")?;
        Ok(ModelParams::new(self.m()?, g, self.eta()?)?)
    }

    fn policy(&self) -> ScanPolicy {
        ScanPolicy {
            k_max: self.common.k_max.or(self.cfg.k_max),
            window: None,
        }
    }

    fn format(&self) -> Format {
        self.common.format.or(self.cfg.format).unwrap_or(Format::Json)
    }

    fn out(&self) -> Option<PathBuf> {
        self.common.out.clone().or_else(|| self.cfg.out.clone())
    }

    fn threads(&self) -> Option<usize> {
        self.common.threads.or(self.cfg.threads)
    }

    fn grid(&self, grid: &GridArgs) -> CliResult<Axis> {
        Ok(Axis::linear(
            required(grid.g_min.or(self.cfg.g_min), "g-min")?,
            required(grid.g_max.or(self.cfg.g_max), "g-max")?,
            required(grid.g_steps.or(self.cfg.g_steps), "g-steps")?,
        ))
    }
}

fn csv_text(f: impl FnOnce(Vec<u8>) -> crate::error::Result<Vec<u8>>) -> CliResult<String> {
    let bytes = f(Vec::new())?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn rows_csv<R: Serialize>(rows: &[R]) -> CliResult<String> {
    csv_text(|buf| {
        let mut w = csv::Writer::from_writer(buf);
        for r in rows {
            w.serialize(r)?;
        }
        w.into_inner().map_err(|e| Error::Csv(csv::Error::from(e.into_error())))
    })
}

fn key_value_csv(pairs: &[(&str, String)]) -> CliResult<String> {
    let mut s = String::from("field,value\n");
    for (k, v) in pairs {
        s.push_str(&format!("{k},{v}\n"));
    }
    Ok(s)
}

#[derive(Serialize)]
struct BlockRow {
    n: usize,
    photons: usize,
    m3: f64,
    diag: String,
    sub: String,
}

#[derive(Serialize)]
struct GroundRow {
    n: usize,
    photons: usize,
    coeff: String,
    weight: String,
}

#[derive(Serialize)]
struct PerturbCsvRow {
    k: usize,
    energy_exact: String,
    energy_pert: String,
    abs_diff: String,
    valid_regime: bool,
}

#[derive(Serialize, Deserialize)]
pub struct GroundReport {
    pub result: GroundStateResult,
    pub weights: DickeWeights,
    pub photon_distribution: Vec<(usize, f64)>,
}

#[derive(Serialize, Deserialize)]
pub struct StaircaseReport {
    pub m: usize,
    pub eta: f64,
    pub points: Vec<StaircasePoint>,
}

#[derive(Serialize, Deserialize)]
pub struct PerturbReport {
    pub params: ModelParams,
    pub k_star_perturbative: usize,
    pub rows: Vec<PerturbRow>,
}

#[derive(Serialize, Deserialize)]
pub struct ProtocolDocument {
    pub params: ModelParams,
    pub report: crate::protocol::ProtocolReport,
}

fn execute(command: Command) -> CliResult<(Option<PathBuf>, String)> {
    let (common, kind) = match &command {
        Command::Block { common, .. } => (common.clone(), "block"),
        Command::Ground { common } => (common.clone(), "ground"),
        Command::Staircase { common, .. } => (common.clone(), "staircase"),
        Command::Crossings { common, .. } => (common.clone(), "crossings"),
        Command::Sweep { common, .. } => (common.clone(), "sweep"),
        Command::Protocol { common, .. } => (common.clone(), "protocol"),
        Command::Perturb { common, .. } => (common.clone(), "perturb"),
        Command::OracleCheck { common, .. } => (common.clone(), "oracle-check"),
    };
    let r = Resolved::new(common)?;
    let format = r.format();

    let body = || -> CliResult<String> {
        match command {
            Command::Block { k, .. } => {
                let params = r.params()?;
                let k = BlockIndex(required(k.or(r.cfg.k), "k")?);
                let block = build_block(&params, k);
                match format {
                    Format::Json => Ok(to_json_string(kind, &block)?),
                    Format::Csv => {
                        let rows: Vec<BlockRow> = basis_labels(&params, k)
                            .iter()
                            .enumerate()
                            .map(|(n, l)| BlockRow {
                                n,
                                photons: l.photons,
                                m3: l.m3,
                                diag: fmt_f64(block.diag[n]),
                                sub: n.checked_sub(1).map_or(String::new(), |i| fmt_f64(block.sub[i])),
                            })
                            .collect();
                        rows_csv(&rows)
                    }
                }
            }
            Command::Ground { .. } => {
                let gs = find_kstar(&r.params()?, &r.policy())?;
                let report = GroundReport {
                    weights: dicke_weights(&gs),
                    photon_distribution: photon_distribution(&gs),
                    result: gs,
                };
                match format {
                    Format::Json => Ok(to_json_string(kind, &report)?),
                    Format::Csv => {
                        let k = report.result.k_star;
                        let rows: Vec<GroundRow> = report
                            .result
                            .coeffs
                            .iter()
                            .enumerate()
                            .map(|(n, &a)| GroundRow {
                                n,
                                photons: k - n,
                                coeff: fmt_f64(a),
                                weight: fmt_f64(a * a),
                            })
                            .collect();
                        rows_csv(&rows)
                    }
                }
            }
            Command::Staircase { grid, .. } => {
                let (m, eta) = (r.m()?, r.eta()?);
                let axis = r.grid(&grid)?;
                if axis.steps == 0 {
                    return Err(Failure::Usage("--g-steps must be at least 1".into()));
                }
                let points = staircase(m, eta, &axis.values(), &r.policy())?;
                match format {
                    Format::Json => Ok(to_json_string(kind, &StaircaseReport { m, eta, points })?),
                    Format::Csv => csv_text(|b| write_staircase_csv(&points, b)),
                }
            }
            Command::Crossings { k_from, k_to, .. } => {
                let (m, eta) = (r.m()?, r.eta()?);
                let k_from = k_from.or(r.cfg.k_from).unwrap_or(1);
                let k_to = k_to.or(r.cfg.k_to).unwrap_or(m / 2 + 1);
                let table = crossing_table(m, eta, k_from, k_to)?;
                match format {
                    Format::Json => Ok(to_json_string(kind, &table)?),
                    Format::Csv => csv_text(|b| write_crossings_csv(&table, b)),
                }
            }
            Command::Sweep {
                grid,
                eta_min,
                eta_max,
                eta_steps,
                eta_linear,
                quantity,
                n_target,
                threshold,
                ..
            } => {
                let m = r.m()?;
                let spacing = if eta_linear || r.cfg.eta_linear == Some(true) {
                    Spacing::Linear
                } else {
                    Spacing::Log
                };
                let eta_axis = Axis {
                    min: required(eta_min.or(r.cfg.eta_min), "eta-min")?,
                    max: required(eta_max.or(r.cfg.eta_max), "eta-max")?,
                    steps: required(eta_steps.or(r.cfg.eta_steps), "eta-steps")?,
                    spacing,
                };
                let quantity = match quantity.or(r.cfg.quantity).unwrap_or(QuantityArg::KStar) {
                    QuantityArg::KStar => Quantity::KStar,
                    QuantityArg::Energy => Quantity::Energy,
                    QuantityArg::Weight => Quantity::Weight {
                        n: n_target.or(r.cfg.n_target).unwrap_or(m.div_ceil(2)),
                    },
                };
                let spec = SweepSpec {
                    m,
                    g_axis: r.grid(&grid)?,
                    eta_axis,
                    quantity,
                    threshold: threshold.or(r.cfg.threshold),
                    policy: r.policy(),
                };
                let map = run_sweep(&spec)?;
                match format {
                    Format::Json => Ok(to_json_string(kind, &map)?),
                    Format::Csv => csv_text(|b| write_region_csv(&map, b)),
                }
            }
            Command::Protocol { samples, .. } => {
                let params = r.params()?;
                let gs = find_kstar(&params, &r.policy())?;
                let samples = samples.or(r.cfg.samples).unwrap_or(100_000);
                let seed = r.common.seed.or(r.cfg.seed).unwrap_or(0);
                let report = run_protocol(&gs, samples, seed)?;
                match format {
                    Format::Json => Ok(to_json_string(kind, &ProtocolDocument { params, report })?),
                    Format::Csv => key_value_csv(&[
                        ("m", report.m.to_string()),
                        ("g", fmt_f64(params.g())),
                        ("eta", fmt_f64(params.eta())),
                        ("k_star", report.k_star.to_string()),
                        ("samples", report.samples.to_string()),
                        ("seed", report.seed.to_string()),
                        ("successes", report.successes.to_string()),
                        ("empirical_rate", fmt_f64(report.empirical_rate)),
                        ("theoretical_rate", fmt_f64(report.theoretical_rate)),
                        (
                            "mean_attempts_to_success",
                            report.mean_attempts_to_success.map_or("NA".into(), fmt_f64),
                        ),
                        ("structurally_impossible", report.structurally_impossible.to_string()),
                    ]),
                }
            }
            Command::Perturb { k, .. } => {
                let params = r.params()?;
                let ks: Vec<usize> = match k.or(r.cfg.k) {
                    Some(k) => vec![k],
                    None => (0..=params.m()).collect(),
                };
                let report = PerturbReport {
                    params,
                    k_star_perturbative: kstar_perturbative(&params),
                    rows: compare_perturbative(&params, &ks)?,
                };
                match format {
                    Format::Json => Ok(to_json_string(kind, &report)?),
                    Format::Csv => {
                        let rows: Vec<PerturbCsvRow> = report
                            .rows
                            .iter()
                            .map(|r| PerturbCsvRow {
                                k: r.k,
                                energy_exact: fmt_f64(r.energy_exact),
                                energy_pert: fmt_f64(r.energy_pert),
                                abs_diff: fmt_f64(r.abs_diff),
                                valid_regime: r.valid_regime,
                            })
                            .collect();
                        rows_csv(&rows)
                    }
                }
            }
            Command::OracleCheck { n_max, .. } => {
                let params = r.params()?;
                let n_max = n_max.or(r.cfg.n_max).unwrap_or_else(|| default_n_max(&params));
                let report = compare_backends(&params, n_max)?;
                match format {
                    Format::Json => Ok(to_json_string(kind, &report)?),
                    Format::Csv => key_value_csv(&[
                        ("m", params.m().to_string()),
                        ("g", fmt_f64(params.g())),
                        ("eta", fmt_f64(params.eta())),
                        ("n_max", report.n_max.to_string()),
                        ("k_star", report.k_star.to_string()),
                        ("block_scan", fmt_f64(report.block_scan)),
                        ("truncated_dense", fmt_f64(report.truncated_dense)),
                        ("full_qubit", fmt_f64(report.full_qubit)),
                        ("max_difference", fmt_f64(report.max_difference())),
                        ("cutoff_warning", report.cutoff_warning.to_string()),
                    ]),
                }
            }
        }
    };

    let text = match r.threads() {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
            pool.install(body)?
        }
        None => body()?,
    };
    Ok((r.out(), text))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Domain(Error::io(path, e))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Domain(Error::io("<stdout>", e))),
    }
}

/// Run the CLI on `argv` (including the program name), writing results to
/// `stdout` and diagnostics to standard error. Returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(cli.command).and_then(|(out, text)| emit(out.as_deref(), &text, stdout));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun with --help for usage.");
            2
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Entry point used by the binary.
pub fn cli_main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}
