//! Frenet frames of unit-speed timelike curves.
//!
//! For a unit-speed timelike curve the frame `{t, n, b}` satisfies
//!
//! ```text
//! t' = kappa n,    n' = kappa t + tau b,    b' = -tau n,
//! ```
//!
//! with `<t,t> = -1` and `<n,n> = <b,b> = 1`. The normal comes from
//! `n = d2 / kappa`; the binormal is the Lorentzian product `t ^ n`, which
//! is automatically unit spacelike and orthogonal to both. Torsion is read
//! off as `tau = <d3, b> / kappa`.
//!
//! The system determines `(b, tau)` only up to a simultaneous sign flip:
//! replacing `b` by `-b` negates `tau` and leaves every Frenet relation
//! satisfied. [`frenet_frame`] resolves the ambiguity by comparing the
//! finite-difference defect `|b' + tau n|` for both orientations and
//! keeping the smaller one, with ties going to `t ^ n`. (The two defects
//! agree to rounding, so in practice the canonical orientation is chosen;
//! the comparison documents that no information is lost.)

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;
use crate::tol;

use super::TimelikeCurve;

/// Orthonormal frame and scalar invariants of a curve at one parameter.
#[derive(Debug, Clone, Copy)]
pub struct FrenetFrame {
    /// Unit timelike tangent.
    pub t: MinkVector,
    /// Unit spacelike principal normal.
    pub n: MinkVector,
    /// Unit spacelike binormal, oriented as described on the module.
    pub b: MinkVector,
    pub kappa: f64,
    pub tau: f64,
    /// Derivative of curvature with respect to arclength.
    pub kappa_prime: f64,
}

/// Frame candidate prior to binormal orientation selection.
fn frame_raw(curve: &TimelikeCurve, s: f64, kappa_floor: f64) -> Result<FrenetFrame> {
    let jet = curve.jet(s);
    let q = jet.d1.inner(&jet.d1);
    if !q.is_finite() {
        return Err(Error::NonFinite { context: "curve velocity" });
    }
    let deviation = (q + 1.0).abs();
    if deviation > 1e-6 {
        return Err(Error::NotUnitSpeed { param: s, deviation });
    }
    let kappa = jet.d2.norm();
    if kappa <= kappa_floor {
        return Err(Error::VanishingCurvature { param: s, kappa });
    }
    let n = jet.d2.scale(1.0 / kappa);
    let b = jet.d1.cross(&n);
    let tau = jet.d3.inner(&b) / kappa;
    // kappa^2 = <d2, d2>, so kappa' = <d3, d2> / kappa; exact whenever the
    // jets are.
    let kappa_prime = jet.d3.inner(&jet.d2) / kappa;
    Ok(FrenetFrame { t: jet.d1, n, b, kappa, tau, kappa_prime })
}

/// Central-difference defect `|b' + tau n|` for the candidate orientation
/// `sign * (t ^ n)`. Probe points are pulled inside the domain near its
/// ends, degrading to a one-sided quotient there.
fn binormal_defect(curve: &TimelikeCurve, s: f64, kappa_floor: f64, sign: f64) -> f64 {
    let (t0, t1) = curve.domain();
    let h = tol::FD_STEP;
    let lo = (s - h).max(t0);
    let hi = (s + h).min(t1);
    let (fl, fh, fc) = match (
        frame_raw(curve, lo, kappa_floor),
        frame_raw(curve, hi, kappa_floor),
        frame_raw(curve, s, kappa_floor),
    ) {
        (Ok(fl), Ok(fh), Ok(fc)) => (fl, fh, fc),
        // Without neighbors there is nothing to compare; report a tie.
        _ => return 0.0,
    };
    let db = (fh.b.scale(sign) - fl.b.scale(sign)).scale(1.0 / (hi - lo));
    let tau = fc.tau * sign;
    let defect = db + fc.n.scale(tau);
    defect.euclid_norm_sq().sqrt()
}

/// Frame at `s` with the default curvature floor.
pub fn frenet_frame(curve: &TimelikeCurve, s: f64) -> Result<FrenetFrame> {
    frenet_frame_with_floor(curve, s, tol::KAPPA_FLOOR)
}

/// Frame at `s`, treating curvatures at or below `kappa_floor` as zero.
pub fn frenet_frame_with_floor(
    curve: &TimelikeCurve,
    s: f64,
    kappa_floor: f64,
) -> Result<FrenetFrame> {
    let mut frame = frame_raw(curve, s, kappa_floor)?;
    let keep = binormal_defect(curve, s, kappa_floor, 1.0);
    let flip = binormal_defect(curve, s, kappa_floor, -1.0);
    if flip < keep {
        frame.b = -frame.b;
        frame.tau = -frame.tau;
    }
    Ok(frame)
}
