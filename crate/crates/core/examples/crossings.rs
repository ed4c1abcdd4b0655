//! Exact level-crossing couplings g_k next to sqrt(M / (M - 2k + 2)).
//!
//!     cargo run --example crossings -- 16 1e-3

use dicke_control::spectrum::crossing_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map_or(Ok(16), |s| s.parse())?;
    let eta: f64 = args.get(1).map_or(Ok(1e-3), |s| s.parse())?;

    let table = crossing_table(m, eta, 1, m / 2)?;
    println!("M = {m}, eta = {eta}");
    println!("{:>3} {:>18} {:>18} {:>10}", "k", "g exact", "g pert", "rel diff");
    for e in &table.entries {
        let fmt = |x: Option<f64>| x.map_or("NA".to_string(), |v| format!("{v:.12}"));
        let rel = match (e.g_exact, e.g_pert) {
            (Some(a), Some(b)) => format!("{:.2e}", (a - b).abs() / b),
            _ => "-".into(),
        };
        println!("{:>3} {:>18} {:>18} {rel:>10}", e.k, fmt(e.g_exact), fmt(e.g_pert));
    }
    Ok(())
}
