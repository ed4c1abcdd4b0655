//! CSV and JSON output.
//!
//! CSV layouts:
//!
//! | data      | header               |
//! |-----------|----------------------|
//! | sweep     | `g,eta,value,mask`   |
//! | staircase | `g,k_star`           |
//! | crossings | `k,g_exact,g_pert`   |
//!
//! Sweep rows are row-major with `η` outer. Floats are written with 17
//! significant digits; integers (`k*`) as plain integers. A missing value
//! (exhausted scan, failed root, no predicted crossing) is written `NA`, and
//! the `mask` column is empty when the sweep had no threshold.
//!
//! JSON documents wrap their payload as
//! `{"schema_version": 1, "kind": ..., "data": ...}`.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{CrossingEntry, CrossingTable, StaircasePoint};
use crate::sweep::{Quantity, RegionMap};

pub const SCHEMA_VERSION: u32 = 1;
const MISSING: &str = "NA";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonDocument<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

impl<T> JsonDocument<T> {
    pub fn new(kind: impl Into<String>, data: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            data,
        }
    }
}

/// `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| MISSING.to_string(), fmt_f64)
}

fn parse_opt_f64(field: &str) -> Result<Option<f64>> {
    if field == MISSING {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| Error::Domain(format!("cannot parse number {field:?}")))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

pub fn to_json_string<T: Serialize>(kind: &str, data: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&JsonDocument::new(kind, data))?)
}

pub fn emit_json<T: Serialize>(kind: &str, data: &T, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &JsonDocument::new(kind, data))?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<JsonDocument<T>> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    let doc: JsonDocument<T> = serde_json::from_str(&text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Domain(format!(
            "unsupported schema_version {} in {}",
            doc.schema_version,
            path.display()
        )));
    }
    Ok(doc)
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<W> {
    w.into_inner()
        .map_err(|e| Error::Csv(csv::Error::from(e.into_error())))
}

/// Write sweep rows to any writer.
pub fn write_region_csv<W: Write>(map: &RegionMap, out: W) -> Result<W> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["g", "eta", "value", "mask"])?;
    let integral = matches!(map.spec.quantity, Quantity::KStar);
    for (i, value) in map.values.iter().enumerate() {
        let (g, eta) = map.coords(i);
        let value = match value {
            None => MISSING.to_string(),
            Some(v) if integral => format!("{}", *v as u64),
            Some(v) => fmt_f64(*v),
        };
        let mask = map
            .mask
            .as_ref()
            .map_or_else(String::new, |m| m[i].to_string());
        w.write_record([fmt_f64(g), fmt_f64(eta), value, mask])?;
    }
    finish(w)
}

pub fn emit_csv(map: &RegionMap, path: &Path) -> Result<()> {
    let w = write_region_csv(map, create(path)?)?;
    w.into_inner().map(|_| ()).map_err(|e| Error::io(path, e.into_error()))
}

/// One parsed row of a sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub g: f64,
    pub eta: f64,
    pub value: Option<f64>,
    pub mask: Option<bool>,
}

pub fn read_region_csv<R: Read>(input: R) -> Result<Vec<RegionRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["g", "eta", "value", "mask"] {
        return Err(Error::Domain(format!("unexpected sweep CSV header {header:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let mask = match &rec[3] {
                "" => None,
                "true" => Some(true),
                "false" => Some(false),
                other => return Err(Error::Domain(format!("bad mask field {other:?}"))),
            };
            Ok(RegionRow {
                g: parse_opt_f64(&rec[0])?.unwrap_or(f64::NAN),
                eta: parse_opt_f64(&rec[1])?.unwrap_or(f64::NAN),
                value: parse_opt_f64(&rec[2])?,
                mask,
            })
        })
        .collect()
}

pub fn write_staircase_csv<W: Write>(points: &[StaircasePoint], out: W) -> Result<W> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["g", "k_star"])?;
    for p in points {
        let k = p.k_star.map_or_else(|| MISSING.to_string(), |k| k.to_string());
        w.write_record([fmt_f64(p.g), k])?;
    }
    finish(w)
}

pub fn read_staircase_csv<R: Read>(input: R) -> Result<Vec<StaircasePoint>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec?;
            let k_star = match &rec[1] {
                MISSING => None,
                s => Some(s.parse().map_err(|_| Error::Domain(format!("bad k_star {s:?}")))?),
            };
            Ok(StaircasePoint {
                g: parse_opt_f64(&rec[0])?.unwrap_or(f64::NAN),
                k_star,
            })
        })
        .collect()
}

pub fn write_crossings_csv<W: Write>(table: &CrossingTable, out: W) -> Result<W> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "g_exact", "g_pert"])?;
    for e in &table.entries {
        w.write_record([e.k.to_string(), fmt_opt(e.g_exact), fmt_opt(e.g_pert)])?;
    }
    finish(w)
}

pub fn read_crossings_csv<R: Read>(input: R) -> Result<Vec<CrossingEntry>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(CrossingEntry {
                k: rec[0].parse().map_err(|_| Error::Domain(format!("bad k {:?}", &rec[0])))?,
                g_exact: parse_opt_f64(&rec[1])?,
                g_pert: parse_opt_f64(&rec[2])?,
            })
        })
        .collect()
}

/// Write through a path, mapping I/O errors to the path.
pub fn write_file(path: &Path, f: impl FnOnce(BufWriter<File>) -> Result<BufWriter<File>>) -> Result<()> {
    let w = f(create(path)?)?;
    w.into_inner().map(|_| ()).map_err(|e| Error::io(path, e.into_error()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::spectrum::{crossing_table, find_kstar, staircase, GroundStateResult, ScanPolicy};
    use crate::sweep::{run_sweep, Axis, SweepSpec};
    use proptest::prelude::*;

    fn sweep(quantity: Quantity, threshold: Option<f64>) -> RegionMap {
        run_sweep(&SweepSpec {
            m: 6,
            g_axis: Axis::linear(0.5, 4.0, 4),
            eta_axis: Axis::log(1e-4, 0.1, 3),
            quantity,
            threshold,
            policy: ScanPolicy::default(),
        })
        .unwrap()
    }

    #[test]
    fn single_cell_row() {
        let map = run_sweep(&SweepSpec {
            m: 4,
            g_axis: Axis::linear(0.5, 0.5, 1),
            eta_axis: Axis::log(0.01, 0.01, 1),
            quantity: Quantity::KStar,
            threshold: None,
            policy: ScanPolicy::default(),
        })
        .unwrap();
        let text = String::from_utf8(write_region_csv(&map, Vec::new()).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "g,eta,value,mask");
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], format!("{},{},0,", fmt_f64(0.5), fmt_f64(0.01)));
    }

    #[test]
    fn region_csv_round_trip() {
        for (q, t) in [(Quantity::KStar, Some(2.0)), (Quantity::Weight { n: 3 }, Some(0.9)), (Quantity::Energy, None)] {
            let map = sweep(q, t);
            let bytes = write_region_csv(&map, Vec::new()).unwrap();
            let rows = read_region_csv(bytes.as_slice()).unwrap();
            assert_eq!(rows.len(), map.len());
            for (i, row) in rows.iter().enumerate() {
                assert_eq!((row.g, row.eta), map.coords(i));
                assert_eq!(row.value, map.values[i]);
                assert_eq!(row.mask, map.mask.as_ref().map(|m| m[i]));
            }
        }
    }

    #[test]
    fn staircase_and_crossings_csv() {
        let pts = staircase(8, 1e-3, &[0.5, 1.5, 2.5], &ScanPolicy::default()).unwrap();
        let bytes = write_staircase_csv(&pts, Vec::new()).unwrap();
        assert!(String::from_utf8(bytes.clone()).unwrap().starts_with("g,k_star\n"));
        assert_eq!(read_staircase_csv(bytes.as_slice()).unwrap(), pts);

        let table = crossing_table(8, 1e-3, 1, 6).unwrap();
        let bytes = write_crossings_csv(&table, Vec::new()).unwrap();
        assert!(String::from_utf8(bytes.clone()).unwrap().starts_with("k,g_exact,g_pert\n"));
        assert_eq!(read_crossings_csv(bytes.as_slice()).unwrap(), table.entries);
    }

    #[test]
    fn json_round_trip_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let map = sweep(Quantity::Weight { n: 3 }, Some(0.5));
        let path = dir.path().join("sweep.json");
        emit_json("sweep", &map, &path).unwrap();
        let doc: JsonDocument<RegionMap> = read_json(&path).unwrap();
        assert_eq!(doc.schema_version, 1);
        assert_eq!(doc.data, map);

        let gs = find_kstar(&ModelParams::new(8, 2.2, 1e-3).unwrap(), &ScanPolicy::default()).unwrap();
        let text = to_json_string("ground", &gs).unwrap();
        let back: JsonDocument<GroundStateResult> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.data, gs);

        let csv_path = dir.path().join("sweep.csv");
        emit_csv(&map, &csv_path).unwrap();
        let rows = read_region_csv(File::open(&csv_path).unwrap()).unwrap();
        assert_eq!(rows.len(), map.len());
    }

    #[test]
    fn io_errors_carry_path() {
        let map = sweep(Quantity::KStar, None);
        let err = emit_csv(&map, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    proptest! {
        #![proptest_config(ProptestConfig { rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed0003), ..ProptestConfig::default() })]
        #[test]
        fn float_format_round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
