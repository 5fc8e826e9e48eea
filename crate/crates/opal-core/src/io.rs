//! Matrix file formats shared project-wide.
//!
//! JSON: `{"n": 2, "entries": [[re, im], ...]}` row-major, n^2 entries.
//! CSV: header `row,col,re,im`, 0-indexed coordinates, one entry per line.
//! Both serializers print shortest round-trip float representations, so
//! convert round trips are bit-exact.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::cmat::{C64, CMat};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<(f64, f64)>,
}

pub fn matrix_to_json(x: &CMat) -> String {
    let file = MatrixFile {
        n: x.dim(),
        entries: x.data().iter().map(|z| (z.re, z.im)).collect(),
    };
    serde_json::to_string_pretty(&file).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<CMat> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    CMat::from_pairs(file.n, &file.entries)
}

pub fn matrix_to_csv(x: &CMat) -> String {
    let mut out = String::from("row,col,re,im\n");
    let n = x.dim();
    for i in 0..n {
        for j in 0..n {
            let z = x[(i, j)];
            out.push_str(&format!("{},{},{},{}\n", i, j, z.re, z.im));
        }
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<CMat> {
    let mut entries: Vec<(usize, usize, C64)> = Vec::new();
    let mut max_idx = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 {
            if line != "row,col,re,im" {
                return Err(Error::ParseError(format!(
                    "line 1: expected header 'row,col,re,im', got '{line}'"
                )));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::ParseError(format!(
                "line {}: expected 4 fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse_idx = |s: &str, what: &str| {
            s.trim().parse::<usize>().map_err(|_| {
                Error::ParseError(format!("line {}: bad {what} '{s}'", lineno + 1))
            })
        };
        let parse_f = |s: &str, what: &str| {
            s.trim().parse::<f64>().map_err(|_| {
                Error::ParseError(format!("line {}: bad {what} '{s}'", lineno + 1))
            })
        };
        let row = parse_idx(fields[0], "row")?;
        let col = parse_idx(fields[1], "col")?;
        let re = parse_f(fields[2], "real part")?;
        let im = parse_f(fields[3], "imaginary part")?;
        max_idx = max_idx.max(row).max(col);
        entries.push((row, col, C64::new(re, im)));
    }
    if entries.is_empty() {
        return Err(Error::ParseError("no matrix entries".into()));
    }
    let n = max_idx + 1;
    let mut m = CMat::zeros(n);
    for (i, j, z) in entries {
        m[(i, j)] = z;
    }
    m.check_finite()?;
    Ok(m)
}

/// Read a matrix, dispatching on the `.json` / `.csv` extension.
pub fn read_matrix(path: &Path) -> Result<CMat> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => matrix_from_csv(&text),
        _ => matrix_from_json(&text),
    }
}

pub fn write_matrix(path: &Path, x: &CMat) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => matrix_to_csv(x),
        _ => matrix_to_json(x),
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Format conversion with a lossless guarantee for finite values.
pub fn convert(input: &Path, output: &Path) -> Result<()> {
    let m = read_matrix(input)?;
    write_matrix(output, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{SplitMix64, random_matrix};

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut rng = SplitMix64::new(1);
        let x = random_matrix(&mut rng, 7);
        let back = matrix_from_json(&matrix_to_json(&x)).unwrap();
        assert!(x == back, "round trip must preserve bits");
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let mut rng = SplitMix64::new(2);
        let x = random_matrix(&mut rng, 9);
        let back = matrix_from_csv(&matrix_to_csv(&x)).unwrap();
        assert!(x == back);
    }

    #[test]
    fn cross_format_round_trip() {
        let mut rng = SplitMix64::new(3);
        let x = random_matrix(&mut rng, 4);
        let csv = matrix_to_csv(&x);
        let via_csv = matrix_from_csv(&csv).unwrap();
        let json = matrix_to_json(&via_csv);
        let back = matrix_from_json(&json).unwrap();
        assert!(x == back);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        assert!(matches!(
            matrix_from_json("{ not json"),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            matrix_from_csv("wrong,header\n0,0,1,0\n"),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            matrix_from_csv("row,col,re,im\n0,0,abc,0\n"),
            Err(Error::ParseError(_))
        ));
        // entry count mismatch
        assert!(matches!(
            matrix_from_json("{\"n\": 2, \"entries\": [[1.0, 0.0]]}"),
            Err(Error::ParseError(_))
        ));
    }
}

