//! Turning command-line arguments into tube surfaces.

use std::path::Path;

use minktube::curve::reparam::reparametrize_unit_speed;
use minktube::curve::sampled::read_curve_table;
use minktube::curve::{CurvePreset, TimelikeCurve};
use minktube::error::{Error, Result};
use minktube::minkowski::MinkVector;
use minktube::tol;
use minktube::tube::TubeSurface;

/// Samples used by construction-time validation sweeps.
const VALIDATION_SAMPLES: usize = 256;

/// Quadrature panels for arclength reparametrization.
const REPARAM_PANELS: usize = 512;

/// Parse a `NTxNTH` grid-dimension argument. Doubles as the clap value
/// parser, so violations surface as usage errors.
pub fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (nt, ntheta) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NTxNTH (like 64x128), got '{s}'"))?;
    let nt: usize = nt.trim().parse().map_err(|_| format!("bad axis count '{nt}'"))?;
    let ntheta: usize =
        ntheta.trim().parse().map_err(|_| format!("bad angle count '{ntheta}'"))?;
    if nt < 8 {
        return Err(format!("axis count {nt} is below the minimum of 8"));
    }
    if ntheta < 16 {
        return Err(format!("angle count {ntheta} is below the minimum of 16"));
    }
    Ok((nt, ntheta))
}

/// How the normal-plane frame of a straight axis is chosen.
#[derive(Debug, Clone)]
pub enum FrameSpec {
    /// Derive a constant frame from the axis direction.
    Auto,
    /// Caller-supplied `n` and `b`.
    Explicit { n: MinkVector, b: MinkVector },
}

/// Parse a `--frame` argument: `auto` or six comma-separated numbers
/// `n1,n2,n3,b1,b2,b3`.
pub fn parse_frame(s: &str) -> std::result::Result<FrameSpec, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(FrameSpec::Auto);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected 'auto' or six numbers n1,n2,n3,b1,b2,b3, got {} values",
            parts.len()
        ));
    }
    let mut v = [0.0f64; 6];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("bad frame component '{part}'"))?;
    }
    Ok(FrameSpec::Explicit {
        n: MinkVector::new(v[0], v[1], v[2]),
        b: MinkVector::new(v[3], v[4], v[5]),
    })
}

fn parse_helix_params(params: &str) -> Result<(f64, f64, f64)> {
    let (mut a, mut b, mut omega) = (std::f64::consts::SQRT_2, 1.0, 1.0);
    for piece in params.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (key, value) = piece.split_once('=').ok_or_else(|| Error::ParamDomain {
            family: "helix parameters",
            reason: format!("expected key=value, got '{piece}'"),
        })?;
        let value: f64 = value.trim().parse().map_err(|_| Error::ParamDomain {
            family: "helix parameters",
            reason: format!("bad number '{}' for '{}'", value.trim(), key.trim()),
        })?;
        match key.trim() {
            "a" => a = value,
            "b" => b = value,
            "omega" => omega = value,
            other => {
                return Err(Error::ParamDomain {
                    family: "helix parameters",
                    reason: format!("unknown key '{other}' (expected a, b, omega)"),
                })
            }
        }
    }
    Ok((a, b, omega))
}

fn preset_by_name(name: &str, params: Option<&str>) -> Result<TimelikeCurve> {
    let reject_params = |family: &'static str| -> Result<()> {
        if params.is_some() {
            return Err(Error::ParamDomain {
                family,
                reason: "--params applies only to the helix preset".into(),
            });
        }
        Ok(())
    };
    match name {
        "line" => {
            reject_params("line")?;
            TimelikeCurve::preset(CurvePreset::Line)
        }
        "hyperbola" => {
            reject_params("hyperbola")?;
            TimelikeCurve::preset(CurvePreset::Hyperbola)
        }
        "polynomial" => {
            reject_params("polynomial")?;
            TimelikeCurve::preset(CurvePreset::Polynomial)
        }
        "helix" => {
            let (a, b, omega) = parse_helix_params(params.unwrap_or(""))?;
            TimelikeCurve::preset(CurvePreset::Helix { a, b, omega })
        }
        other => Err(Error::ParamDomain {
            family: "curve preset",
            reason: format!(
                "unknown preset '{other}' (expected line, hyperbola, helix, or polynomial)"
            ),
        }),
    }
}

/// Build the axis curve from the command-line selection. Non-unit-speed
/// timelike curves are reparametrized by arclength, with a notice on
/// standard error.
pub fn build_curve(
    preset: Option<&str>,
    params: Option<&str>,
    csv: Option<&Path>,
) -> Result<TimelikeCurve> {
    let curve = match csv {
        Some(path) => read_curve_table(path)?,
        None => preset_by_name(preset.unwrap_or("helix"), params)?,
    };
    curve.validate_timelike(VALIDATION_SAMPLES)?;
    if curve.validate_unit_speed(VALIDATION_SAMPLES, tol::UNIT_SPEED_TOL).is_err() {
        eprintln!(
            "note: axis '{}' is not unit-speed; reparametrizing by arclength",
            curve.label()
        );
        return reparametrize_unit_speed(&curve, REPARAM_PANELS);
    }
    Ok(curve)
}

/// Build the tube, routing straight axes through the constant-frame
/// construction selected by `--frame`.
pub fn build_tube(curve: TimelikeCurve, radius: f64, frame: Option<&FrameSpec>) -> Result<TubeSurface> {
    let straight = curve.kappa_sup(VALIDATION_SAMPLES) <= tol::KAPPA_FLOOR;
    match (straight, frame) {
        (true, Some(FrameSpec::Auto)) => TubeSurface::make_cylinder(curve, radius),
        (true, Some(FrameSpec::Explicit { n, b })) => {
            TubeSurface::make_with_frame(curve, radius, *n, *b)
        }
        (true, None) => Err(Error::ParamDomain {
            family: "tube",
            reason: format!(
                "axis '{}' is straight, so no Frenet frame exists; pass --frame auto \
                 or --frame n1,n2,n3,b1,b2,b3",
                curve.label()
            ),
        }),
        (false, Some(_)) => Err(Error::ParamDomain {
            family: "tube",
            reason: "--frame applies only to straight axes; curved axes use their \
                     Frenet frame"
                .into(),
        }),
        (false, None) => TubeSurface::make(curve, radius),
    }
}
