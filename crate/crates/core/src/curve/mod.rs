//! Timelike curves in Minkowski 3-space and their derivative jets.
//!
//! A curve is anything that can produce position and derivatives up to
//! third order at a parameter value. Built-in presets cover the classical
//! test cases (a timelike line, the unit hyperbola, unit-speed helices,
//! and a non-unit-speed polynomial arc); arbitrary curves enter through
//! [`TimelikeCurve::from_fn`] or sampled tables (see [`sampled`]).
//!
//! Downstream geometry assumes arclength parametrization: `<d1, d1> = -1`
//! everywhere. [`reparam::reparametrize_unit_speed`] converts any timelike
//! curve into that form.

pub mod frenet;
pub mod reparam;
pub mod sampled;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;

/// Position and first three derivatives of a curve at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub position: MinkVector,
    pub d1: MinkVector,
    pub d2: MinkVector,
    pub d3: MinkVector,
}

/// How a curve's derivatives are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetSource {
    /// Exact expressions (presets, closures, arclength reparametrizations
    /// of analytic curves).
    Analytic,
    /// Stencil differentiation of a sample table; accuracy is limited by
    /// the table spacing.
    SampledFiniteDifference,
}

/// The built-in curve families.
///
/// All presets except `Polynomial` are unit-speed as constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvePreset {
    /// `s -> (s, 0, 0)`: a timelike geodesic; curvature vanishes.
    Line,
    /// `s -> (sinh s, cosh s, 0)`: unit curvature, zero torsion.
    Hyperbola,
    /// `s -> (a s, b cos(omega s), b sin(omega s))` with
    /// `a^2 - b^2 omega^2 = 1`: curvature `b omega^2`, torsion `a omega`.
    Helix { a: f64, b: f64, omega: f64 },
    /// `u -> (2u, u^2, u^3/3)` on `|u| <= 1/2`: timelike but not
    /// unit-speed, with genuinely varying curvature after
    /// reparametrization.
    Polynomial,
}

pub(crate) trait JetEval: Send + Sync {
    fn jet(&self, t: f64) -> CurveJet;
}

struct FnJets<F: Fn(f64) -> CurveJet + Send + Sync>(F);

impl<F: Fn(f64) -> CurveJet + Send + Sync> JetEval for FnJets<F> {
    fn jet(&self, t: f64) -> CurveJet {
        (self.0)(t)
    }
}

/// A curve of Minkowski 3-space, presented through its jets.
///
/// Cloning is cheap; the evaluator is shared.
#[derive(Clone)]
pub struct TimelikeCurve {
    eval: Arc<dyn JetEval>,
    domain: (f64, f64),
    source: JetSource,
    label: String,
}

impl std::fmt::Debug for TimelikeCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TimelikeCurve")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("source", &self.source)
            .finish()
    }
}

impl TimelikeCurve {
    /// Wrap a jet-producing closure. The closure must be defined on (a
    /// neighborhood of) `domain`; derivative cross-checks probe slightly
    /// outside grid points but never outside the stated interval by more
    /// than the finite-difference step.
    pub fn from_fn<F>(label: &str, domain: (f64, f64), f: F) -> Result<TimelikeCurve>
    where
        F: Fn(f64) -> CurveJet + Send + Sync + 'static,
    {
        if !(domain.0.is_finite() && domain.1.is_finite()) {
            return Err(Error::NonFinite { context: "curve domain" });
        }
        if domain.0 >= domain.1 {
            return Err(Error::DomainViolation {
                name: "domain width",
                value: domain.1 - domain.0,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
        Ok(TimelikeCurve {
            eval: Arc::new(FnJets(f)),
            domain,
            source: JetSource::Analytic,
            label: label.to_string(),
        })
    }

    pub(crate) fn from_parts(
        eval: Arc<dyn JetEval>,
        domain: (f64, f64),
        source: JetSource,
        label: String,
    ) -> TimelikeCurve {
        TimelikeCurve { eval, domain, source, label }
    }

    /// Build one of the preset families, validating its parameters.
    pub fn preset(preset: CurvePreset) -> Result<TimelikeCurve> {
        match preset {
            CurvePreset::Line => TimelikeCurve::from_fn("line", (-1.0, 1.0), |s| CurveJet {
                position: MinkVector::new(s, 0.0, 0.0),
                d1: MinkVector::new(1.0, 0.0, 0.0),
                d2: MinkVector::ZERO,
                d3: MinkVector::ZERO,
            }),
            CurvePreset::Hyperbola => {
                TimelikeCurve::from_fn("hyperbola", (-1.5, 1.5), |s| CurveJet {
                    position: MinkVector::new(s.sinh(), s.cosh(), 0.0),
                    d1: MinkVector::new(s.cosh(), s.sinh(), 0.0),
                    d2: MinkVector::new(s.sinh(), s.cosh(), 0.0),
                    d3: MinkVector::new(s.cosh(), s.sinh(), 0.0),
                })
            }
            CurvePreset::Helix { a, b, omega } => {
                if ![a, b, omega].iter().all(|x| x.is_finite()) {
                    return Err(Error::NonFinite { context: "helix parameters" });
                }
                let gauge = a * a - b * b * omega * omega;
                if (gauge - 1.0).abs() > 1e-9 {
                    return Err(Error::ParamDomain {
                        family: "helix",
                        reason: format!(
                            "a^2 - b^2*omega^2 = {gauge} but unit speed requires 1"
                        ),
                    });
                }
                if b <= 0.0 {
                    return Err(Error::ParamDomain {
                        family: "helix",
                        reason: format!("b = {b} must be positive"),
                    });
                }
                if omega == 0.0 {
                    return Err(Error::ParamDomain {
                        family: "helix",
                        reason: "omega must be nonzero".to_string(),
                    });
                }
                TimelikeCurve::from_fn(
                    "helix",
                    (0.0, 2.0 * std::f64::consts::PI),
                    move |s| {
                        let (sin, cos) = (omega * s).sin_cos();
                        CurveJet {
                            position: MinkVector::new(a * s, b * cos, b * sin),
                            d1: MinkVector::new(a, -b * omega * sin, b * omega * cos),
                            d2: MinkVector::new(
                                0.0,
                                -b * omega * omega * cos,
                                -b * omega * omega * sin,
                            ),
                            d3: MinkVector::new(
                                0.0,
                                b * omega * omega * omega * sin,
                                -b * omega * omega * omega * cos,
                            ),
                        }
                    },
                )
            }
            CurvePreset::Polynomial => {
                TimelikeCurve::from_fn("polynomial", (-0.5, 0.5), |u| CurveJet {
                    position: MinkVector::new(2.0 * u, u * u, u * u * u / 3.0),
                    d1: MinkVector::new(2.0, 2.0 * u, u * u),
                    d2: MinkVector::new(0.0, 2.0, 2.0 * u),
                    d3: MinkVector::new(0.0, 0.0, 2.0),
                })
            }
        }
    }

    /// Position and derivatives at `t`.
    pub fn jet(&self, t: f64) -> CurveJet {
        self.eval.jet(t)
    }

    /// Parameter interval the curve is meant to be used on.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn jet_source(&self) -> JetSource {
        self.source
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evenly spaced parameters covering the domain, endpoints included.
    pub fn param_grid(&self, n: usize) -> Vec<f64> {
        let (t0, t1) = self.domain;
        if n <= 1 {
            return vec![t0];
        }
        let h = (t1 - t0) / (n - 1) as f64;
        (0..n).map(|i| t0 + h * i as f64).collect()
    }

    /// Check `<d1, d1> < 0` on an `n`-point grid including both endpoints.
    pub fn validate_timelike(&self, n: usize) -> Result<()> {
        for t in self.param_grid(n.max(2)) {
            let q = self.jet(t).d1.inner(&self.jet(t).d1);
            if !q.is_finite() {
                return Err(Error::NonFinite { context: "curve velocity" });
            }
            if q >= 0.0 {
                return Err(Error::NotTimelike { param: t, inner: q });
            }
        }
        Ok(())
    }

    /// Check `|<d1, d1> + 1| <= tol` on an `n`-point grid. Reports the
    /// worst offender when the check fails.
    pub fn validate_unit_speed(&self, n: usize, tol: f64) -> Result<()> {
        let mut worst: Option<(f64, f64)> = None;
        for t in self.param_grid(n.max(2)) {
            let d1 = self.jet(t).d1;
            let dev = (d1.inner(&d1) + 1.0).abs();
            if worst.is_none_or(|(_, w)| dev > w) {
                worst = Some((t, dev));
            }
        }
        match worst {
            Some((param, deviation)) if deviation > tol => {
                Err(Error::NotUnitSpeed { param, deviation })
            }
            _ => Ok(()),
        }
    }

    /// Largest curvature seen on an `n`-point grid (frame not required).
    pub fn kappa_sup(&self, n: usize) -> f64 {
        self.param_grid(n.max(2))
            .into_iter()
            .map(|t| self.jet(t).d2.norm())
            .fold(0.0, f64::max)
    }
}

/// One row of a curvature/torsion profile.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    pub s: f64,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
}

/// Sample curvature, torsion, and the curvature derivative on an evenly
/// spaced `n`-point grid. Requires a unit-speed curve with a Frenet frame
/// everywhere on the grid.
pub fn curvature_profile(curve: &TimelikeCurve, n: usize) -> Result<Vec<CurvatureSample>> {
    curve
        .param_grid(n.max(2))
        .into_iter()
        .map(|s| {
            let f = frenet::frenet_frame(curve, s)?;
            Ok(CurvatureSample { s, kappa: f.kappa, tau: f.tau, kappa_prime: f.kappa_prime })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;
    use approx::assert_relative_eq;

    pub(crate) fn unit_helix() -> TimelikeCurve {
        TimelikeCurve::preset(CurvePreset::Helix {
            a: 2.0_f64.sqrt(),
            b: 1.0,
            omega: 1.0,
        })
        .unwrap()
    }

    #[test]
    fn hyperbola_jets_at_origin() {
        let c = TimelikeCurve::preset(CurvePreset::Hyperbola).unwrap();
        let j = c.jet(0.0);
        assert_eq!(j.position, MinkVector::new(0.0, 1.0, 0.0));
        assert_eq!(j.d1, MinkVector::new(1.0, 0.0, 0.0));
        assert_eq!(j.d2, MinkVector::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn line_has_vanishing_higher_jets() {
        let c = TimelikeCurve::preset(CurvePreset::Line).unwrap();
        let j = c.jet(0.3);
        assert_eq!(j.d2, MinkVector::ZERO);
        assert_eq!(j.d3, MinkVector::ZERO);
    }

    #[test]
    fn helix_is_unit_speed_everywhere() {
        let c = unit_helix();
        c.validate_unit_speed(64, tol::UNIT_SPEED_TOL).unwrap();
        for s in c.param_grid(17) {
            let d1 = c.jet(s).d1;
            assert_relative_eq!(d1.inner(&d1), -1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn helix_gauge_violation_is_rejected() {
        let err = TimelikeCurve::preset(CurvePreset::Helix { a: 1.0, b: 1.0, omega: 1.0 })
            .unwrap_err();
        assert!(matches!(err, Error::ParamDomain { family: "helix", .. }));
    }

    #[test]
    fn polynomial_is_timelike_but_not_unit_speed() {
        let c = TimelikeCurve::preset(CurvePreset::Polynomial).unwrap();
        c.validate_timelike(64).unwrap();
        let err = c.validate_unit_speed(64, tol::UNIT_SPEED_TOL).unwrap_err();
        assert!(matches!(err, Error::NotUnitSpeed { .. }));
    }

    #[test]
    fn null_velocity_at_endpoint_fails_timelike_validation() {
        // d1 = (1, u, 0) has <d1,d1> = u^2 - 1, null exactly at u = -1.
        let c = TimelikeCurve::from_fn("null-end", (-1.0, 0.0), |u| CurveJet {
            position: MinkVector::new(u, u * u / 2.0, 0.0),
            d1: MinkVector::new(1.0, u, 0.0),
            d2: MinkVector::new(0.0, 1.0, 0.0),
            d3: MinkVector::ZERO,
        })
        .unwrap();
        let err = c.validate_timelike(64).unwrap_err();
        assert!(matches!(err, Error::NotTimelike { .. }));
    }

    #[test]
    fn degenerate_domain_is_rejected() {
        let r = TimelikeCurve::from_fn("empty", (1.0, 1.0), |s| CurveJet {
            position: MinkVector::new(s, 0.0, 0.0),
            d1: MinkVector::new(1.0, 0.0, 0.0),
            d2: MinkVector::ZERO,
            d3: MinkVector::ZERO,
        });
        assert!(r.is_err());
    }

    #[test]
    fn profile_of_helix_has_constant_curvature_and_torsion() {
        let profile = curvature_profile(&unit_helix(), 33).unwrap();
        for p in &profile {
            assert_relative_eq!(p.kappa, 1.0, max_relative = 1e-12);
            assert_relative_eq!(p.tau, 2.0_f64.sqrt(), max_relative = 1e-12);
            assert!(p.kappa_prime.abs() <= 1e-8);
        }
    }

    #[test]
    fn profile_of_line_reports_vanishing_curvature() {
        let err = curvature_profile(&TimelikeCurve::preset(CurvePreset::Line).unwrap(), 9)
            .unwrap_err();
        assert!(matches!(err, Error::VanishingCurvature { .. }));
    }
}
