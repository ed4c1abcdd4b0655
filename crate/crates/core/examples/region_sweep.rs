//! Map where the half-excited Dicke state dominates the ground state, and
//! write the map as CSV.
//!
//!     cargo run --release --example region_sweep -- 16 region.csv

use std::path::PathBuf;

use dicke_control::io::emit_csv;
use dicke_control::spectrum::ScanPolicy;
use dicke_control::sweep::{run_sweep, Axis, Quantity, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(16), |s| s.parse())?;
    let out = args.get(1).map(PathBuf::from);

    let spec = SweepSpec {
        m,
        g_axis: Axis::linear(1.0, 8.0, 36),
        eta_axis: Axis::log(1e-6, 1e-1, 16),
        quantity: Quantity::Weight { n: m.div_ceil(2) },
        threshold: Some(0.95),
        policy: ScanPolicy::default(),
    };
    let map = run_sweep(&spec)?;

    // rows are eta (top = largest), columns are g
    let ng = map.g_values.len();
    let mask = map.mask.as_ref().expect("threshold set");
    for (row, eta) in map.eta_values.iter().enumerate().rev() {
        let line: String = (0..ng).map(|c| if mask[row * ng + c] { '#' } else { '.' }).collect();
        println!("{eta:9.1e} {line}");
    }
    println!("area fraction with w >= 0.95: {:.4}", map.region_area_fraction.unwrap_or(0.0));

    if let Some(path) = out {
        emit_csv(&map, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
