//! Curves given by sample tables.
//!
//! The on-disk format is a CSV file with the exact header `s,y1,y2,y3`,
//! one row per sample, strictly increasing `s`, and at least 7 rows.
//! Derivative jets at a query parameter come from the degree-4 polynomial
//! through the five nearest samples (a classical five-point stencil on
//! uniform tables, and its divided-difference generalization otherwise),
//! so d1..d3 carry errors of order h^4, h^3, h^2 in the local spacing h.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;

use super::{CurveJet, JetEval, JetSource, TimelikeCurve};

/// Required header line of a curve table.
pub const CURVE_TABLE_HEADER: &str = "s,y1,y2,y3";

/// Minimum number of sample rows; five-point stencils need slack on both
/// sides of interior queries.
pub const MIN_SAMPLES: usize = 7;

struct SampledJets {
    s: Vec<f64>,
    points: Vec<MinkVector>,
}

/// Value and first three derivatives of the degree-4 interpolant through
/// `(xs[i], ys[i])`, evaluated at `x`. Works in coordinates shifted to the
/// window center to keep the monomial expansion well-conditioned.
fn stencil_jets(xs: &[f64; 5], ys: &[f64; 5], x: f64) -> [f64; 4] {
    let xc = xs[2];
    let t: Vec<f64> = xs.iter().map(|v| v - xc).collect();
    // Divided-difference (Newton) coefficients.
    let mut dd = *ys;
    for order in 1..5 {
        for i in (order..5).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (t[i] - t[i - order]);
        }
    }
    // Expand the Newton form into monomials around xc.
    let mut mono = [0.0_f64; 5];
    mono[0] = dd[4];
    let mut degree = 0usize;
    for k in (0..4).rev() {
        // Multiply current polynomial by (xi - t[k]), then add dd[k].
        degree += 1;
        for i in (1..=degree).rev() {
            mono[i] = mono[i - 1] - t[k] * mono[i];
        }
        mono[0] = dd[k] - t[k] * mono[0];
    }
    let xi = x - xc;
    let mut out = [0.0_f64; 4];
    for (k, &c) in mono.iter().enumerate() {
        let kf = k as f64;
        out[0] += c * xi.powi(k as i32);
        if k >= 1 {
            out[1] += c * kf * xi.powi(k as i32 - 1);
        }
        if k >= 2 {
            out[2] += c * kf * (kf - 1.0) * xi.powi(k as i32 - 2);
        }
        if k >= 3 {
            out[3] += c * kf * (kf - 1.0) * (kf - 2.0) * xi.powi(k as i32 - 3);
        }
    }
    out
}

impl JetEval for SampledJets {
    fn jet(&self, t: f64) -> CurveJet {
        // Index of the sample nearest to t, then a window of five samples
        // around it, clamped into the table.
        let n = self.s.len();
        let mut i = match self.s.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i,
            Err(i) => i,
        };
        if i > 0 && (i == n || (t - self.s[i - 1]).abs() <= (self.s[i.min(n - 1)] - t).abs()) {
            i -= 1;
        }
        let lo = i.saturating_sub(2).min(n - 5);
        let xs: [f64; 5] = std::array::from_fn(|k| self.s[lo + k]);
        let mut comps = [[0.0_f64; 4]; 3];
        for (c, comp) in comps.iter_mut().enumerate() {
            let ys: [f64; 5] = std::array::from_fn(|k| {
                let p = self.points[lo + k];
                match c {
                    0 => p.y1,
                    1 => p.y2,
                    _ => p.y3,
                }
            });
            *comp = stencil_jets(&xs, &ys, t);
        }
        CurveJet {
            position: MinkVector::new(comps[0][0], comps[1][0], comps[2][0]),
            d1: MinkVector::new(comps[0][1], comps[1][1], comps[2][1]),
            d2: MinkVector::new(comps[0][2], comps[1][2], comps[2][2]),
            d3: MinkVector::new(comps[0][3], comps[1][3], comps[2][3]),
        }
    }
}

/// Build a curve from explicit samples (parameter, position), already
/// sorted by parameter. Enforces the same rules as the table reader.
pub fn from_samples(label: &str, samples: &[(f64, MinkVector)]) -> Result<TimelikeCurve> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { got: samples.len(), need: MIN_SAMPLES });
    }
    for (i, (s, p)) in samples.iter().enumerate() {
        if !s.is_finite() || !p.is_finite() {
            return Err(Error::NonFinite { context: "curve sample" });
        }
        if i > 0 && *s <= samples[i - 1].0 {
            return Err(Error::CurveTable {
                line: i + 2, // header is line 1 when read from a table
                message: format!(
                    "s = {} does not increase past previous value {}",
                    s,
                    samples[i - 1].0
                ),
            });
        }
    }
    let eval = SampledJets {
        s: samples.iter().map(|(s, _)| *s).collect(),
        points: samples.iter().map(|(_, p)| *p).collect(),
    };
    let domain = (samples[0].0, samples[samples.len() - 1].0);
    Ok(TimelikeCurve::from_parts(
        Arc::new(eval),
        domain,
        JetSource::SampledFiniteDifference,
        label.to_string(),
    ))
}

/// Parse a curve table from any reader. Errors carry 1-based line numbers.
pub fn parse_curve_table<R: Read>(label: &str, reader: R) -> Result<TimelikeCurve> {
    let buf = BufReader::new(reader);
    let mut samples: Vec<(f64, MinkVector)> = Vec::new();
    let mut lines = buf.lines().enumerate();
    match lines.next() {
        Some((_, line)) => {
            let line = line?;
            if line.trim() != CURVE_TABLE_HEADER {
                return Err(Error::CurveTable {
                    line: 1,
                    message: format!(
                        "expected header '{CURVE_TABLE_HEADER}', found '{}'",
                        line.trim()
                    ),
                });
            }
        }
        None => {
            return Err(Error::CurveTable { line: 1, message: "empty table".to_string() });
        }
    }
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::CurveTable {
                line: lineno,
                message: format!("expected 4 comma-separated fields, found {}", fields.len()),
            });
        }
        let mut vals = [0.0_f64; 4];
        for (v, f) in vals.iter_mut().zip(fields.iter()) {
            *v = f.parse::<f64>().map_err(|e| Error::CurveTable {
                line: lineno,
                message: format!("'{f}' is not a number: {e}"),
            })?;
            if !v.is_finite() {
                return Err(Error::CurveTable {
                    line: lineno,
                    message: format!("'{f}' is not finite"),
                });
            }
        }
        if let Some((prev, _)) = samples.last() {
            if vals[0] <= *prev {
                return Err(Error::CurveTable {
                    line: lineno,
                    message: format!("s = {} does not increase past {}", vals[0], prev),
                });
            }
        }
        samples.push((vals[0], MinkVector::new(vals[1], vals[2], vals[3])));
    }
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { got: samples.len(), need: MIN_SAMPLES });
    }
    from_samples(label, &samples)
}

/// Read a curve table from a file path.
pub fn read_curve_table<P: AsRef<Path>>(path: P) -> Result<TimelikeCurve> {
    let label = path
        .as_ref()
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sampled".to_string());
    let file = File::open(path)?;
    parse_curve_table(&label, file)
}
