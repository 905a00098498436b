//! Generic surface patches and curvature from first principles.
//!
//! Everything in this module works from the definitions alone: fundamental
//! forms are scalar products of patch jets, the normal is a normalized
//! vector product of the tangents, Gaussian and mean curvature are the
//! classical quotients
//!
//! ```text
//! K = eps * (eg - f^2) / (EG - F^2)
//! H = eps * (eG - 2fF + gE) / (2 (EG - F^2))
//! ```
//!
//! with `eps = <U, U>`, and the second Gaussian curvature applies the
//! Brioschi curvature formula to the second fundamental form in place of
//! the metric. No closed-form shortcut for any particular surface family
//! appears here, which is what makes the module usable as an independent
//! oracle for those closed forms.
//!
//! The ambient scalar product is a parameter ([`Metric`]); the Lorentzian
//! one is the default throughout the crate, the Euclidean one exists so
//! classical sanity results (e.g. the unit sphere's second curvature
//! equals its Gaussian curvature) can be tested with the same code path.

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;
use crate::tol;

/// Ambient scalar product selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Signature (-, +, +); the crate default.
    Lorentzian,
    /// Plain dot product; used by auxiliary sanity tests.
    Euclidean,
}

impl Metric {
    pub fn inner(&self, a: &MinkVector, b: &MinkVector) -> f64 {
        match self {
            Metric::Lorentzian => a.inner(b),
            Metric::Euclidean => a.y1 * b.y1 + a.y2 * b.y2 + a.y3 * b.y3,
        }
    }

    pub fn norm(&self, a: &MinkVector) -> f64 {
        self.inner(a, a).abs().sqrt()
    }

    /// Vector product adapted to the metric: the Lorentzian product for
    /// the Lorentzian metric, the familiar cross product otherwise. In
    /// both cases the result is `inner`-orthogonal to the factors.
    pub fn cross(&self, a: &MinkVector, b: &MinkVector) -> MinkVector {
        match self {
            Metric::Lorentzian => a.cross(b),
            Metric::Euclidean => MinkVector::new(
                a.y2 * b.y3 - a.y3 * b.y2,
                a.y3 * b.y1 - a.y1 * b.y3,
                a.y1 * b.y2 - a.y2 * b.y1,
            ),
        }
    }
}

/// Position and derivative jets of a patch at one parameter pair.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJets {
    pub x: MinkVector,
    pub x_u: MinkVector,
    pub x_v: MinkVector,
    pub x_uu: MinkVector,
    pub x_uv: MinkVector,
    pub x_vv: MinkVector,
}

/// How a patch produces its jets; mirrors [`crate::curve::JetSource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchJetSource {
    Analytic,
    FiniteDifference,
}

/// A parametrized surface piece `x(u, v)`.
///
/// Implementations must be defined on the closed rectangle reported by
/// [`SurfacePatch::domain`]. Finite-difference consumers stay inside the
/// rectangle; analytic implementations are typically entire anyway.
pub trait SurfacePatch: Send + Sync {
    fn jets(&self, u: f64, v: f64) -> SurfaceJets;
    /// Parameter rectangle `((u0, u1), (v0, v1))`.
    fn domain(&self) -> ((f64, f64), (f64, f64));
    fn jet_source(&self) -> PatchJetSource {
        PatchJetSource::Analytic
    }
}

/// Wrap a position-only map as a patch, producing jets by central
/// differences with step `h`. Useful both for surfaces with no analytic
/// derivatives and as an independent check on surfaces that have them.
pub struct FdJetPatch<F: Fn(f64, f64) -> MinkVector + Send + Sync> {
    position: F,
    domain: ((f64, f64), (f64, f64)),
    h: f64,
}

impl<F: Fn(f64, f64) -> MinkVector + Send + Sync> FdJetPatch<F> {
    pub fn new(position: F, domain: ((f64, f64), (f64, f64)), h: f64) -> Self {
        FdJetPatch { position, domain, h }
    }
}

impl<F: Fn(f64, f64) -> MinkVector + Send + Sync> SurfacePatch for FdJetPatch<F> {
    fn jets(&self, u: f64, v: f64) -> SurfaceJets {
        let h = self.h;
        let f = &self.position;
        let x = f(u, v);
        let xpu = f(u + h, v);
        let xmu = f(u - h, v);
        let xpv = f(u, v + h);
        let xmv = f(u, v - h);
        SurfaceJets {
            x,
            x_u: (xpu - xmu).scale(1.0 / (2.0 * h)),
            x_v: (xpv - xmv).scale(1.0 / (2.0 * h)),
            x_uu: (xpu - x.scale(2.0) + xmu).scale(1.0 / (h * h)),
            x_vv: (xpv - x.scale(2.0) + xmv).scale(1.0 / (h * h)),
            x_uv: (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h)
                + f(u - h, v - h))
            .scale(1.0 / (4.0 * h * h)),
        }
    }

    fn domain(&self) -> ((f64, f64), (f64, f64)) {
        self.domain
    }

    fn jet_source(&self) -> PatchJetSource {
        PatchJetSource::FiniteDifference
    }
}

/// Coefficients of one symmetric bilinear form on the tangent plane.
/// For the first form the fields hold E, F, G; for the second, e, f, g.
#[derive(Debug, Clone, Copy)]
pub struct FormCoefficients {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FormCoefficients {
    /// `eg - f^2`.
    pub fn discriminant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// First and second fundamental forms plus the normal's causal sign.
#[derive(Debug, Clone, Copy)]
pub struct FundamentalForms {
    /// E, F, G.
    pub first: FormCoefficients,
    /// e, f, g.
    pub second: FormCoefficients,
    /// `<U, U>`, snapped to +1 or -1.
    pub eps_u: f64,
}

/// Unit normal `x_u ^ x_v / |x_u ^ x_v|` at `(u, v)`.
pub fn unit_normal(
    metric: Metric,
    patch: &dyn SurfacePatch,
    u: f64,
    v: f64,
) -> Result<MinkVector> {
    let jets = patch.jets(u, v);
    let cross = metric.cross(&jets.x_u, &jets.x_v);
    let norm = metric.norm(&cross);
    if !(norm.is_finite()) {
        return Err(Error::NonFinite { context: "surface normal" });
    }
    if norm <= 1e-10 {
        return Err(Error::DegenerateTangentPlane { u, v });
    }
    Ok(cross.scale(1.0 / norm))
}

/// Both fundamental forms at `(u, v)`, from the definitions.
pub fn fundamental_forms(
    metric: Metric,
    patch: &dyn SurfacePatch,
    u: f64,
    v: f64,
) -> Result<FundamentalForms> {
    let jets = patch.jets(u, v);
    let normal = unit_normal(metric, patch, u, v)?;
    let eps_raw = metric.inner(&normal, &normal);
    let eps_u = if eps_raw >= 0.0 { 1.0 } else { -1.0 };
    Ok(FundamentalForms {
        first: FormCoefficients {
            e: metric.inner(&jets.x_u, &jets.x_u),
            f: metric.inner(&jets.x_u, &jets.x_v),
            g: metric.inner(&jets.x_v, &jets.x_v),
        },
        second: FormCoefficients {
            e: metric.inner(&jets.x_uu, &normal),
            f: metric.inner(&jets.x_uv, &normal),
            g: metric.inner(&jets.x_vv, &normal),
        },
        eps_u,
    })
}

/// Gaussian curvature from the forms.
pub fn gaussian_curvature(forms: &FundamentalForms) -> Result<f64> {
    let den = forms.first.discriminant();
    if den.abs() <= tol::METRIC_DEGENERACY_TOL {
        return Err(Error::DegenerateMetric { value: den });
    }
    Ok(forms.eps_u * forms.second.discriminant() / den)
}

/// Mean curvature from the forms.
pub fn mean_curvature(forms: &FundamentalForms) -> Result<f64> {
    let den = forms.first.discriminant();
    if den.abs() <= tol::METRIC_DEGENERACY_TOL {
        return Err(Error::DegenerateMetric { value: den });
    }
    let num = forms.second.e * forms.first.g - 2.0 * forms.second.f * forms.first.f
        + forms.second.g * forms.first.e;
    Ok(forms.eps_u * num / (2.0 * den))
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Brioschi curvature of the coefficient field `(e, f, g)(u, v)`: the
/// curvature the Brioschi formula assigns to a form with those
/// coefficients, using the supplied partial derivatives (subscripts: `u`
/// first axis, `v` second).
#[allow(clippy::too_many_arguments)]
fn brioschi(
    e: f64,
    f: f64,
    g: f64,
    e_u: f64,
    e_v: f64,
    e_vv: f64,
    f_u: f64,
    f_v: f64,
    f_uv: f64,
    g_u: f64,
    g_v: f64,
    g_uu: f64,
) -> f64 {
    let m1 = [
        [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
        [f_v - 0.5 * g_u, e, f],
        [0.5 * g_v, f, g],
    ];
    let m2 = [[0.0, 0.5 * e_v, 0.5 * g_u], [0.5 * e_v, e, f], [0.5 * g_u, f, g]];
    let den = e * g - f * f;
    (det3(m1) - det3(m2)) / (den * den)
}

/// Second-form coefficients at a stencil point, with the degeneracy
/// precondition enforced: the Brioschi quotient treats `(e, f, g)` as a
/// metric, which stops making sense where `eg - f^2` vanishes.
fn second_form_at(
    metric: Metric,
    patch: &dyn SurfacePatch,
    u: f64,
    v: f64,
) -> Result<(f64, f64, f64)> {
    let forms = fundamental_forms(metric, patch, u, v)?;
    let disc = forms.second.discriminant();
    if disc.abs() <= tol::DEGENERACY_TOL {
        return Err(Error::DegenerateSecondForm { u, v, value: disc });
    }
    Ok((forms.second.e, forms.second.f, forms.second.g))
}

fn brioschi_with_steps(
    metric: Metric,
    patch: &dyn SurfacePatch,
    u: f64,
    v: f64,
    hu: f64,
    hv: f64,
) -> Result<f64> {
    let ef = |uu: f64, vv: f64| second_form_at(metric, patch, uu, vv);
    let c = ef(u, v)?;
    let pu = ef(u + hu, v)?;
    let mu = ef(u - hu, v)?;
    let pv = ef(u, v + hv)?;
    let mv = ef(u, v - hv)?;
    let pp = ef(u + hu, v + hv)?;
    let pm = ef(u + hu, v - hv)?;
    let mp = ef(u - hu, v + hv)?;
    let mm = ef(u - hu, v - hv)?;
    let du = 2.0 * hu;
    let dv = 2.0 * hv;
    let e_u = (pu.0 - mu.0) / du;
    let e_v = (pv.0 - mv.0) / dv;
    let e_vv = (pv.0 - 2.0 * c.0 + mv.0) / (hv * hv);
    let f_u = (pu.1 - mu.1) / du;
    let f_v = (pv.1 - mv.1) / dv;
    let f_uv = (pp.1 - pm.1 - mp.1 + mm.1) / (4.0 * hu * hv);
    let g_u = (pu.2 - mu.2) / du;
    let g_v = (pv.2 - mv.2) / dv;
    let g_uu = (pu.2 - 2.0 * c.2 + mu.2) / (hu * hu);
    Ok(brioschi(c.0, c.1, c.2, e_u, e_v, e_vv, f_u, f_v, f_uv, g_u, g_v, g_uu))
}

/// Second Gaussian curvature at `(u, v)` by finite differences of the
/// second-form coefficient fields, with one Richardson extrapolation
/// level (the O(h^2) quotients at steps `h` and `h/2` combine to O(h^4)).
///
/// `steps` overrides the per-axis stencil steps; by default each is
/// [`tol::RICHARDSON_STEP_FRACTION`] of the corresponding domain span. The
/// full stencil (points out to `2h` before the precondition margin) must
/// stay inside the patch domain.
pub fn second_gaussian_curvature(
    metric: Metric,
    patch: &dyn SurfacePatch,
    u: f64,
    v: f64,
    steps: Option<(f64, f64)>,
) -> Result<f64> {
    let ((u0, u1), (v0, v1)) = patch.domain();
    let (hu, hv) = steps.unwrap_or((
        tol::RICHARDSON_STEP_FRACTION * (u1 - u0),
        tol::RICHARDSON_STEP_FRACTION * (v1 - v0),
    ));
    if !(hu > 0.0 && hv > 0.0) {
        return Err(Error::DomainViolation {
            name: "brioschi_step",
            value: hu.min(hv),
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    if u - 2.0 * hu < u0 || u + 2.0 * hu > u1 {
        return Err(Error::StencilOutOfDomain { axis: "u", value: u });
    }
    if v - 2.0 * hv < v0 || v + 2.0 * hv > v1 {
        return Err(Error::StencilOutOfDomain { axis: "v", value: v });
    }
    let coarse = brioschi_with_steps(metric, patch, u, v, hu, hv)?;
    let fine = brioschi_with_steps(metric, patch, u, v, 0.5 * hu, 0.5 * hv)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    struct AnalyticPatch<F: Fn(f64, f64) -> SurfaceJets + Send + Sync> {
        jets: F,
        domain: ((f64, f64), (f64, f64)),
    }

    impl<F: Fn(f64, f64) -> SurfaceJets + Send + Sync> SurfacePatch for AnalyticPatch<F> {
        fn jets(&self, u: f64, v: f64) -> SurfaceJets {
            (self.jets)(u, v)
        }
        fn domain(&self) -> ((f64, f64), (f64, f64)) {
            self.domain
        }
    }

    /// Unit sphere in Euclidean signature: `(sin u cos v, sin u sin v, cos u)`.
    fn unit_sphere() -> AnalyticPatch<impl Fn(f64, f64) -> SurfaceJets + Send + Sync> {
        AnalyticPatch {
            jets: |u: f64, v: f64| {
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                SurfaceJets {
                    x: MinkVector::new(su * cv, su * sv, cu),
                    x_u: MinkVector::new(cu * cv, cu * sv, -su),
                    x_v: MinkVector::new(-su * sv, su * cv, 0.0),
                    x_uu: MinkVector::new(-su * cv, -su * sv, -cu),
                    x_uv: MinkVector::new(-cu * sv, cu * cv, 0.0),
                    x_vv: MinkVector::new(-su * cv, -su * sv, 0.0),
                }
            },
            domain: ((0.3, std::f64::consts::PI - 0.3), (0.0, 2.0 * std::f64::consts::PI)),
        }
    }

    /// Spacelike coordinate plane `(0, u, v)` with timelike normal.
    fn spacelike_plane() -> AnalyticPatch<impl Fn(f64, f64) -> SurfaceJets + Send + Sync> {
        AnalyticPatch {
            jets: |u: f64, v: f64| SurfaceJets {
                x: MinkVector::new(0.0, u, v),
                x_u: MinkVector::new(0.0, 1.0, 0.0),
                x_v: MinkVector::new(0.0, 0.0, 1.0),
                x_uu: MinkVector::ZERO,
                x_uv: MinkVector::ZERO,
                x_vv: MinkVector::ZERO,
            },
            domain: ((-1.0, 1.0), (-1.0, 1.0)),
        }
    }

    #[test]
    fn plane_normal_is_unit_timelike() {
        let patch = spacelike_plane();
        let normal = unit_normal(Metric::Lorentzian, &patch, 0.0, 0.0).unwrap();
        assert_relative_eq!(normal.inner(&normal), -1.0, epsilon = 1e-14);
        let forms = fundamental_forms(Metric::Lorentzian, &patch, 0.0, 0.0).unwrap();
        assert_eq!(forms.eps_u, -1.0);
        assert_eq!(forms.second.e, 0.0);
        assert_eq!(forms.second.f, 0.0);
        assert_eq!(forms.second.g, 0.0);
        assert_eq!(gaussian_curvature(&forms).unwrap(), 0.0);
    }

    #[test]
    fn parallel_tangents_are_degenerate() {
        let patch = AnalyticPatch {
            jets: |u: f64, v: f64| SurfaceJets {
                x: MinkVector::new(0.0, u + 2.0 * v, 2.0 * (u + 2.0 * v)),
                x_u: MinkVector::new(0.0, 1.0, 2.0),
                x_v: MinkVector::new(0.0, 2.0, 4.0),
                x_uu: MinkVector::ZERO,
                x_uv: MinkVector::ZERO,
                x_vv: MinkVector::ZERO,
            },
            domain: ((-1.0, 1.0), (-1.0, 1.0)),
        };
        let err = unit_normal(Metric::Lorentzian, &patch, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateTangentPlane { .. }));
    }

    #[test]
    fn lightlike_metric_is_rejected() {
        let forms = FundamentalForms {
            first: FormCoefficients { e: 0.0, f: 0.0, g: 1.0 },
            second: FormCoefficients { e: 1.0, f: 0.0, g: 1.0 },
            eps_u: 1.0,
        };
        assert!(matches!(
            gaussian_curvature(&forms).unwrap_err(),
            Error::DegenerateMetric { .. }
        ));
        assert!(matches!(
            mean_curvature(&forms).unwrap_err(),
            Error::DegenerateMetric { .. }
        ));
    }

    #[test]
    fn sphere_curvatures() {
        let patch = unit_sphere();
        for (u, v) in [(0.7, 0.3), (1.2, 2.0), (2.1, 4.4)] {
            let forms = fundamental_forms(Metric::Euclidean, &patch, u, v).unwrap();
            let k = gaussian_curvature(&forms).unwrap();
            let h = mean_curvature(&forms).unwrap();
            assert_relative_eq!(k, 1.0, epsilon = 1e-12);
            assert_relative_eq!(h.abs(), 1.0, epsilon = 1e-12);
        }
    }

    /// For the unit sphere the second Gaussian curvature coincides with
    /// the Gaussian curvature up to orientation: the determinant formula
    /// is odd under flipping the normal, and this parametrization's
    /// normal points outward, making II = -I, so the oracle must return
    /// exactly -K = -1. The stencil machinery has to reproduce both the
    /// magnitude and that sign.
    #[test]
    fn sphere_second_curvature_equals_gaussian() {
        let patch = unit_sphere();
        for (u, v) in [(0.9, 1.0), (1.5, 3.0)] {
            let forms = fundamental_forms(Metric::Euclidean, &patch, u, v).unwrap();
            assert!(forms.second.e < 0.0, "outward normal makes II negative definite");
            let kii =
                second_gaussian_curvature(Metric::Euclidean, &patch, u, v, None).unwrap();
            assert_relative_eq!(kii, -1.0, epsilon = 1e-8);
        }
    }

    /// Halving the stencil step moves the (already extrapolated) value by
    /// no more than an O(h^2)-sized amount.
    #[test]
    fn second_curvature_converges_under_step_halving() {
        let patch = unit_sphere();
        let (u, v) = (1.1, 2.2);
        let h = 1e-2;
        let k1 =
            second_gaussian_curvature(Metric::Euclidean, &patch, u, v, Some((h, h))).unwrap();
        let k2 = second_gaussian_curvature(
            Metric::Euclidean,
            &patch,
            u,
            v,
            Some((0.5 * h, 0.5 * h)),
        )
        .unwrap();
        assert!((k1 - k2).abs() <= 4.0 * h * h * k1.abs().max(1.0));
    }

    #[test]
    fn flat_second_form_is_degenerate_for_brioschi() {
        let patch = spacelike_plane();
        let err = second_gaussian_curvature(Metric::Lorentzian, &patch, 0.0, 0.0, None)
            .unwrap_err();
        assert!(matches!(err, Error::DegenerateSecondForm { .. }));
    }

    #[test]
    fn stencil_must_fit_in_domain() {
        let patch = unit_sphere();
        let ((u0, _), _) = patch.domain();
        let err =
            second_gaussian_curvature(Metric::Euclidean, &patch, u0 + 1e-6, 1.0, None)
                .unwrap_err();
        assert!(matches!(err, Error::StencilOutOfDomain { axis: "u", .. }));
    }

    /// Finite-difference jets reproduce analytic curvatures to stencil
    /// accuracy on a curved benchmark.
    #[test]
    fn fd_jets_match_analytic_jets() {
        let analytic = unit_sphere();
        let fd = FdJetPatch::new(
            |u: f64, v: f64| {
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                MinkVector::new(su * cv, su * sv, cu)
            },
            ((0.3, std::f64::consts::PI - 0.3), (0.0, 2.0 * std::f64::consts::PI)),
            tol::FD_STEP,
        );
        assert_eq!(fd.jet_source(), PatchJetSource::FiniteDifference);
        for (u, v) in [(0.8, 0.9), (1.4, 2.5)] {
            let fa = fundamental_forms(Metric::Euclidean, &analytic, u, v).unwrap();
            let ff = fundamental_forms(Metric::Euclidean, &fd, u, v).unwrap();
            let ka = gaussian_curvature(&fa).unwrap();
            let kf = gaussian_curvature(&ff).unwrap();
            let ha = mean_curvature(&fa).unwrap();
            let hf = mean_curvature(&ff).unwrap();
            assert_relative_eq!(ka, kf, epsilon = 1e-5);
            assert_relative_eq!(ha, hf, epsilon = 1e-5);
        }
    }
}
