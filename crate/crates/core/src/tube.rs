//! Tubular surfaces around timelike curves, with closed-form curvature.
//!
//! A tube of radius `r` around a unit-speed timelike curve `gamma` is
//!
//! ```text
//! x(t, theta) = gamma(t) + r (cos(theta) n(t) + sin(theta) b(t))
//! ```
//!
//! with `(t, n, b)` the Frenet frame of the axis. Writing
//! `alpha = 1 + r kappa cos(theta)`, `v = cos(theta) b - sin(theta) n`,
//! and `w = cos(theta) n + sin(theta) b`, the tangents are
//! `x_t = alpha t + r tau v` and `x_theta = r v`, the outward unit normal
//! is `-w`, and every curvature invariant reduces to a rational
//! expression in `r, kappa, tau, kappa', cos(theta), sin(theta)`. This
//! module evaluates those closed forms — including the partial
//! derivatives of K, H, and K_II in both parameters — and exposes the
//! tube as a [`SurfacePatch`] so the definitional machinery in
//! [`crate::surface`] can re-derive every quantity independently.
//!
//! Degeneracy: the second fundamental form has discriminant
//! `eg - f^2 = -r kappa alpha cos(theta)`, which vanishes along the
//! curves `cos(theta) = 0` (and identically when `kappa = 0`). The second
//! Gaussian curvature and its derivatives are reported as `None` wherever
//! the discriminant falls below [`tol::DEGENERACY_TOL`], and grids offset
//! their `theta` samples by half a step so no sample lands exactly on the
//! degenerate band.

use crate::curve::frenet::{frenet_frame, FrenetFrame};
use crate::curve::TimelikeCurve;
use crate::error::{Error, Result};
use crate::exec;
use crate::minkowski::MinkVector;
use crate::surface::{FormCoefficients, PatchJetSource, SurfaceJets, SurfacePatch};
use crate::tol;

/// Number of axis samples used by construction-time validation sweeps.
const VALIDATION_SAMPLES: usize = 512;

/// How the tube obtains a normal-plane frame along its axis.
#[derive(Debug, Clone)]
enum FrameSource {
    /// Frenet frame of the axis; requires `kappa > 0` everywhere.
    Frenet,
    /// Caller-supplied constant frame for a straight axis (the cylinder
    /// case, where no Frenet normal exists).
    Constant { n: MinkVector, b: MinkVector },
}

/// A tubular surface: a unit-speed timelike axis plus a radius.
#[derive(Debug, Clone)]
pub struct TubeSurface {
    curve: TimelikeCurve,
    r: f64,
    frame: FrameSource,
    kappa_sup: f64,
}

/// Everything the closed forms yield at a single `(t, theta)`.
#[derive(Debug, Clone, Copy)]
pub struct TubePointData {
    pub t: f64,
    pub theta: f64,
    pub position: MinkVector,
    /// Tangent along the axis direction: `alpha t + r tau v`.
    pub x_t: MinkVector,
    /// Tangent around the cross-section: `r v`.
    pub x_theta: MinkVector,
    /// Outward unit normal `-(cos(theta) n + sin(theta) b)`.
    pub normal: MinkVector,
    /// First fundamental form (E, F, G) from the closed forms.
    pub first: FormCoefficients,
    /// Second fundamental form (e, f, g) from the closed forms.
    pub second: FormCoefficients,
    /// Regularity factor `1 + r kappa cos(theta)`.
    pub alpha: f64,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
    /// Gaussian curvature `kappa cos(theta) / (r alpha)`.
    pub k: f64,
    /// Closed-form mean curvature `-(1 + 2 r kappa cos(theta)) / (2 r alpha)`,
    /// in the orientation convention under which a unit-radius circular
    /// cylinder has `h = -1/2`. The definitional computation with the
    /// outward normal `-w` produces the opposite sign at every point; the
    /// verification report surfaces that globally constant ratio.
    pub h: f64,
    /// Second Gaussian curvature; `None` where the second form is
    /// degenerate (`|eg - f^2|` at or below [`tol::DEGENERACY_TOL`]).
    pub kii: Option<f64>,
    pub k_t: f64,
    pub k_theta: f64,
    pub h_t: f64,
    pub h_theta: f64,
    /// `d/dt` of the second-curvature closed form (the form validated by
    /// the finite-difference oracle); masked like `kii`.
    pub kii_t: Option<f64>,
    /// Variant transcription of the same derivative whose `4 r cos^2`
    /// term carries no `kappa'` factor. Kept so the verification report
    /// can demonstrate which transcription the finite-difference oracle
    /// supports; not used by any theorem check.
    pub kii_t_variant: Option<f64>,
    /// `d/dtheta` of the second-curvature closed form; masked like `kii`.
    pub kii_theta: Option<f64>,
}

impl TubePointData {
    /// True where the second fundamental form is non-degenerate, i.e.
    /// where `kii` (and its derivatives) carry values.
    pub fn kii_valid(&self) -> bool {
        self.kii.is_some()
    }
}

/// Grid of closed-form samples, row-major with `t` as the outer (row)
/// index: `points[it * ntheta + jtheta]`.
#[derive(Debug, Clone)]
pub struct TubeGrid {
    pub ts: Vec<f64>,
    pub thetas: Vec<f64>,
    pub points: Vec<TubePointData>,
}

impl TubeGrid {
    pub fn nt(&self) -> usize {
        self.ts.len()
    }

    pub fn ntheta(&self) -> usize {
        self.thetas.len()
    }

    pub fn at(&self, it: usize, jtheta: usize) -> &TubePointData {
        &self.points[it * self.thetas.len() + jtheta]
    }
}

/// Axis sample positions: `n` evenly spaced parameters inset from each
/// end of the curve domain by 5% of its span, so finite-difference
/// stencils around any grid point stay well inside the domain.
pub fn grid_ts(curve_domain: (f64, f64), n: usize) -> Vec<f64> {
    let (a, b) = curve_domain;
    let inset = 0.05 * (b - a);
    let (a, b) = (a + inset, b - inset);
    let n = n.max(2);
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Cross-section sample angles: `n` points offset half a step from 0 so
/// the grid never contains theta = pi/2 or 3pi/2 (the degenerate band of
/// the second fundamental form) exactly.
pub fn grid_thetas(n: usize) -> Vec<f64> {
    let n = n.max(1);
    let step = 2.0 * std::f64::consts::PI / n as f64;
    (0..n).map(|j| (j as f64 + 0.5) * step).collect()
}

impl TubeSurface {
    /// Build a tube around a unit-speed timelike curve with a Frenet
    /// frame. Enforces the exact regularity margin `r * sup kappa < 1`,
    /// which keeps `alpha > 0` everywhere and the surface embedded and
    /// timelike.
    pub fn make(curve: TimelikeCurve, r: f64) -> Result<TubeSurface> {
        check_radius(r)?;
        curve.validate_unit_speed(VALIDATION_SAMPLES, tol::UNIT_SPEED_TOL)?;
        let mut kappa_sup: f64 = 0.0;
        for s in curve.param_grid(VALIDATION_SAMPLES) {
            let frame = frenet_frame(&curve, s)?;
            kappa_sup = kappa_sup.max(frame.kappa);
        }
        if r * kappa_sup >= 1.0 {
            return Err(Error::RadiusTooLarge {
                radius: r,
                kappa_sup,
                max_radius: 1.0 / kappa_sup,
            });
        }
        Ok(TubeSurface { curve, r, frame: FrameSource::Frenet, kappa_sup })
    }

    /// Build a tube around a straight axis (`kappa = 0`, no Frenet
    /// frame) using a caller-supplied constant normal-plane frame: the
    /// circular-cylinder case. The frame must be orthonormal, orthogonal
    /// to the axis direction, and oriented the same way the Frenet
    /// construction would be (`b = t ^ n`).
    pub fn make_with_frame(
        curve: TimelikeCurve,
        r: f64,
        n: MinkVector,
        b: MinkVector,
    ) -> Result<TubeSurface> {
        check_radius(r)?;
        curve.validate_unit_speed(VALIDATION_SAMPLES, tol::UNIT_SPEED_TOL)?;
        let reject = |reason: String| Error::ParamDomain { family: "constant-frame tube", reason };
        if !(n.is_finite() && b.is_finite()) {
            return Err(reject("frame vectors must be finite".into()));
        }
        if (n.inner(&n) - 1.0).abs() > 1e-9 || (b.inner(&b) - 1.0).abs() > 1e-9 {
            return Err(reject("frame vectors must be unit spacelike".into()));
        }
        if n.inner(&b).abs() > 1e-9 {
            return Err(reject("frame vectors must be orthogonal".into()));
        }
        for s in curve.param_grid(64) {
            let jet = curve.jet(s);
            if jet.d2.norm() > tol::KAPPA_FLOOR {
                return Err(reject(format!(
                    "axis bends at parameter {s} (|d2| = {:e}); a constant frame \
                     fits only straight axes",
                    jet.d2.norm()
                )));
            }
            if jet.d1.inner(&n).abs() > 1e-9 || jet.d1.inner(&b).abs() > 1e-9 {
                return Err(reject(format!(
                    "frame must be orthogonal to the axis tangent at parameter {s}"
                )));
            }
            let cross = jet.d1.cross(&n);
            if (cross - b).norm() > 1e-9 {
                return Err(reject("frame orientation must satisfy b = t ^ n".into()));
            }
        }
        Ok(TubeSurface { curve, r, frame: FrameSource::Constant { n, b }, kappa_sup: 0.0 })
    }

    /// Build a cylinder around a straight axis, deriving the constant
    /// normal-plane frame from the axis direction: `n` is the unit
    /// component of a coordinate axis orthogonal to the tangent, and
    /// `b = t ^ n`.
    pub fn make_cylinder(curve: TimelikeCurve, r: f64) -> Result<TubeSurface> {
        let (a, bb) = curve.domain();
        let d1 = curve.jet(0.5 * (a + bb)).d1;
        let mut n = MinkVector::ZERO;
        for candidate in [MinkVector::new(0.0, 1.0, 0.0), MinkVector::new(0.0, 0.0, 1.0)] {
            // Component orthogonal to the timelike tangent: v + <v, t> t.
            let perp = candidate + candidate.inner(&d1) * d1;
            if perp.norm() > 1e-6 {
                n = perp.scale(1.0 / perp.norm());
                break;
            }
        }
        let b = d1.cross(&n);
        TubeSurface::make_with_frame(curve, r, n, b)
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn curve(&self) -> &TimelikeCurve {
        &self.curve
    }

    /// Largest axis curvature seen during construction.
    pub fn kappa_sup(&self) -> f64 {
        self.kappa_sup
    }

    /// Normal-plane frame at axis parameter `t`.
    pub fn frame_at(&self, t: f64) -> Result<FrenetFrame> {
        match &self.frame {
            FrameSource::Frenet => frenet_frame(&self.curve, t),
            FrameSource::Constant { n, b } => Ok(FrenetFrame {
                t: self.curve.jet(t).d1,
                n: *n,
                b: *b,
                kappa: 0.0,
                tau: 0.0,
                kappa_prime: 0.0,
            }),
        }
    }

    /// Closed-form data at one point. `theta` may be any real number
    /// (the surface is 2 pi periodic); `t` must lie in the axis domain.
    pub fn evaluate(&self, t: f64, theta: f64) -> Result<TubePointData> {
        let (a, b) = self.curve.domain();
        let slack = 1e-9 * (b - a);
        if t < a - slack || t > b + slack {
            return Err(Error::DomainViolation { name: "tube parameter t", value: t, min: a, max: b });
        }
        let frame = self.frame_at(t)?;
        Ok(self.evaluate_with_frame(t, theta, &frame))
    }

    /// Closed-form data at `(t, theta)` given a precomputed axis frame;
    /// grid sweeps use this to build each frame once per row.
    fn evaluate_with_frame(&self, t: f64, theta: f64, frame: &FrenetFrame) -> TubePointData {
        let r = self.r;
        let (kappa, tau, kp) = (frame.kappa, frame.tau, frame.kappa_prime);
        let (s, c) = theta.sin_cos();
        let alpha = 1.0 + r * kappa * c;
        let v = c * frame.b - s * frame.n;
        let w = c * frame.n + s * frame.b;
        let jet = self.curve.jet(t);
        let position = jet.position + r * w;
        let x_t = alpha * frame.t + (r * tau) * v;
        let x_theta = r * v;
        let first = FormCoefficients {
            e: -alpha * alpha + r * r * tau * tau,
            f: r * r * tau,
            g: r * r,
        };
        let second = FormCoefficients { e: r * tau * tau - kappa * alpha * c, f: r * tau, g: r };
        let k = kappa * c / (r * alpha);
        let h = -(1.0 + 2.0 * r * kappa * c) / (2.0 * r * alpha);
        let k_t = kp * c / (r * alpha * alpha);
        let k_theta = -kappa * s / (r * alpha * alpha);
        let a2 = alpha * alpha;
        let h_t = -kp * c / (2.0 * a2);
        let h_theta = kappa * s / (2.0 * a2);
        let nondegenerate = second.discriminant().abs() > tol::DEGENERACY_TOL;
        let (kii, kii_t, kii_t_variant, kii_theta) = if nondegenerate {
            let c2 = c * c;
            let c3 = c2 * c;
            let c4 = c2 * c2;
            let a4 = a2 * a2;
            let kii = (4.0 * r * r * kappa * kappa * c4 + 6.0 * r * kappa * c3 + c2 + 1.0)
                / (4.0 * r * a2 * c2);
            // Shared by both transcriptions of the t-derivative.
            let kii_t_den = 4.0 * r * a4 * c;
            let kii_t = kp
                * (2.0 * r.powi(3) * kappa * kappa * c4 + 6.0 * r * r * kappa * c3
                    + 4.0 * r * c2
                    - 2.0 * r * r * kappa * c
                    - 2.0 * r)
                / kii_t_den;
            let kii_t_variant = (2.0 * r.powi(3) * kappa * kappa * kp * c4
                + 6.0 * r * r * kappa * kp * c3
                + 4.0 * r * c2
                - 2.0 * r * r * kappa * kp * c
                - 2.0 * r * kp)
                / kii_t_den;
            let kii_theta = s
                * (-2.0 * r.powi(3) * kappa.powi(3) * c4 * c2
                    - 6.0 * r * r * kappa * kappa * c4 * c
                    - 4.0 * r * kappa * c4
                    + 4.0 * r * r * kappa * kappa * c3
                    + 6.0 * r * kappa * c2
                    + 2.0 * c)
                / (4.0 * r * a4 * c4);
            (Some(kii), Some(kii_t), Some(kii_t_variant), Some(kii_theta))
        } else {
            (None, None, None, None)
        };
        TubePointData {
            t,
            theta,
            position,
            x_t,
            x_theta,
            normal: -w,
            first,
            second,
            alpha,
            kappa,
            tau,
            kappa_prime: kp,
            k,
            h,
            kii,
            k_t,
            k_theta,
            h_t,
            h_theta,
            kii_t,
            kii_t_variant,
            kii_theta,
        }
    }

    /// Evaluate the closed forms on an `nt x ntheta` grid (rows indexed
    /// by `t`), computing each axis frame once per row. Rows are
    /// processed by [`exec::map_indexed`], so this is the parallel path
    /// when the `parallel` feature is on.
    pub fn evaluate_grid(&self, nt: usize, ntheta: usize) -> Result<TubeGrid> {
        self.grid_impl(nt, ntheta, false)
    }

    /// Sequential twin of [`TubeSurface::evaluate_grid`]; identical
    /// output, used for benchmarking and determinism checks.
    pub fn evaluate_grid_seq(&self, nt: usize, ntheta: usize) -> Result<TubeGrid> {
        self.grid_impl(nt, ntheta, true)
    }

    fn grid_impl(&self, nt: usize, ntheta: usize, sequential: bool) -> Result<TubeGrid> {
        let ts = grid_ts(self.curve.domain(), nt);
        let thetas = grid_thetas(ntheta);
        let row = |i: usize| -> Result<Vec<TubePointData>> {
            let t = ts[i];
            let frame = self.frame_at(t)?;
            Ok(thetas.iter().map(|&th| self.evaluate_with_frame(t, th, &frame)).collect())
        };
        let rows = if sequential {
            exec::map_indexed_seq(ts.len(), row)
        } else {
            exec::map_indexed(ts.len(), row)
        };
        let mut points = Vec::with_capacity(ts.len() * thetas.len());
        for r in rows {
            points.extend(r?);
        }
        Ok(TubeGrid { ts, thetas, points })
    }

    /// View the tube as a generic surface patch with analytic jets, for
    /// the definitional oracle. The `theta` interval is declared wider
    /// than one period (the map is periodic, so evaluation is exact
    /// there), which leaves `t` as the only stencil-limited axis.
    pub fn patch(&self) -> TubePatch<'_> {
        TubePatch { tube: self }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::DomainViolation {
            name: "tube radius",
            value: r,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

/// [`SurfacePatch`] view of a tube: analytic jets from the Frenet
/// expansion of the parametrization.
pub struct TubePatch<'a> {
    tube: &'a TubeSurface,
}

impl TubePatch<'_> {
    /// Torsion derivative by central differences of the frame's torsion,
    /// falling back to one-sided differences at the domain ends. Only the
    /// `v`-component of `x_tt` needs it; every fundamental-form
    /// coefficient is independent of this value because `v` is orthogonal
    /// to the normal.
    fn tau_prime(&self, t: f64) -> f64 {
        match &self.tube.frame {
            FrameSource::Constant { .. } => 0.0,
            FrameSource::Frenet => {
                let (a, b) = self.tube.curve.domain();
                let h = tol::FD_STEP * (b - a).max(1.0);
                let lo = (t - h).max(a);
                let hi = (t + h).min(b);
                let tau_at = |s: f64| self.tube.frame_at(s).map(|fr| fr.tau);
                match (tau_at(lo), tau_at(hi)) {
                    (Ok(t0), Ok(t1)) if hi > lo => (t1 - t0) / (hi - lo),
                    _ => 0.0,
                }
            }
        }
    }
}

impl SurfacePatch for TubePatch<'_> {
    fn jets(&self, t: f64, theta: f64) -> SurfaceJets {
        let frame = self
            .tube
            .frame_at(t)
            .expect("tube patch evaluated where its axis frame is undefined");
        let r = self.tube.r;
        let (kappa, tau) = (frame.kappa, frame.tau);
        let kp = frame.kappa_prime;
        let tp = self.tau_prime(t);
        let (s, c) = theta.sin_cos();
        let alpha = 1.0 + r * kappa * c;
        let v = c * frame.b - s * frame.n;
        let w = c * frame.n + s * frame.b;
        let jet = self.tube.curve.jet(t);
        SurfaceJets {
            x: jet.position + r * w,
            x_u: alpha * frame.t + (r * tau) * v,
            x_v: r * v,
            // d/dt (alpha t + r tau v): alpha' t + alpha kappa n + r tau' v
            // + r tau v', with v' = -kappa sin(theta) t - tau w.
            x_uu: (r * kp * c - r * kappa * tau * s) * frame.t
                + (alpha * kappa) * frame.n
                + (r * tp) * v
                - (r * tau * tau) * w,
            x_uv: (-r * kappa * s) * frame.t - (r * tau) * w,
            x_vv: (-r) * w,
        }
    }

    fn domain(&self) -> ((f64, f64), (f64, f64)) {
        (self.tube.curve.domain(), (-1.0, 2.0 * std::f64::consts::PI + 1.0))
    }

    fn jet_source(&self) -> PatchJetSource {
        match self.tube.curve.jet_source() {
            crate::curve::JetSource::Analytic => PatchJetSource::Analytic,
            crate::curve::JetSource::SampledFiniteDifference => PatchJetSource::FiniteDifference,
        }
    }
}
