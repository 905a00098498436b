//! Arclength reparametrization of timelike curves.
//!
//! Given a timelike curve `gamma(u)` with speed `v(u) = |gamma'(u)|`, the
//! arclength map `S(u) = integral of v` is strictly increasing, so it has
//! an inverse `u(s)`. The reparametrized curve `Gamma(s) = gamma(u(s))` is
//! unit-speed by construction; its jets follow from the chain rule with
//!
//! ```text
//! u'   = 1/v,
//! u''  = -v' / v^3,
//! u''' = -v'' / v^4 + 3 v'^2 / v^5,
//! ```
//!
//! where primes on `v` are derivatives in `u`, themselves expressible
//! through the curve jets: `v' = -<d2,d1>/v` and
//! `v'' = -(<d3,d1> + <d2,d2>)/v - <d2,d1>^2/v^3`.
//!
//! `S` is evaluated by composite 5-point Gauss-Legendre quadrature over a
//! panel table, which is exact to rounding for the smooth speeds handled
//! here, and inverted per query by Newton's method seeded from the table.
//! The new parameter keeps the old domain's starting value, so a curve
//! that is already unit-speed reparametrizes to itself.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::{CurveJet, JetEval, TimelikeCurve};

/// 5-point Gauss-Legendre abscissae (positive half) and weights on [-1, 1].
const GL_X: [f64; 2] = [0.5384693101056831, 0.906179845938664];
const GL_W0: f64 = 0.5688888888888889;
const GL_W: [f64; 2] = [0.47862867049936647, 0.23692688505618908];

fn speed(curve: &TimelikeCurve, u: f64) -> Result<f64> {
    let d1 = curve.jet(u).d1;
    let q = d1.inner(&d1);
    if !q.is_finite() {
        return Err(Error::NonFinite { context: "curve velocity" });
    }
    if q >= 0.0 {
        return Err(Error::NotTimelike { param: u, inner: q });
    }
    Ok((-q).sqrt())
}

/// Gauss-Legendre integral of the speed over `[a, b]`.
fn gl5(curve: &TimelikeCurve, a: f64, b: f64) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = GL_W0 * speed(curve, mid)?;
    for (x, w) in GL_X.iter().zip(GL_W.iter()) {
        acc += w * (speed(curve, mid + half * x)? + speed(curve, mid - half * x)?);
    }
    Ok(acc * half)
}

struct Reparametrized {
    base: TimelikeCurve,
    u0: f64,
    du: f64,
    /// Cumulative arclength at panel boundaries; `cum[0] = 0`.
    cum: Vec<f64>,
}

impl Reparametrized {
    /// Solve `S(u) = target` for `u`; `target` is arclength from `u0`.
    fn invert(&self, target: f64) -> f64 {
        let panels = self.cum.len() - 1;
        // Locate the panel whose arclength range brackets the target.
        let k = match self.cum.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
            Ok(i) => i.min(panels - 1),
            Err(i) => i.saturating_sub(1).min(panels - 1),
        };
        let uk = self.u0 + self.du * k as f64;
        let sk = self.cum[k];
        let mut u = uk;
        for _ in 0..64 {
            let f = sk + gl5(&self.base, uk, u).unwrap_or(f64::NAN) - target;
            let v = speed(&self.base, u).unwrap_or(f64::NAN);
            if !(f.is_finite() && v > 0.0) {
                break;
            }
            let step = f / v;
            u -= step;
            if step.abs() <= 1e-15 * (1.0 + u.abs()) {
                break;
            }
        }
        u
    }
}

impl JetEval for Reparametrized {
    fn jet(&self, s: f64) -> CurveJet {
        let u = self.invert(s - self.u0);
        let jet = self.base.jet(u);
        let q = jet.d1.inner(&jet.d1);
        let v = (-q).sqrt();
        let p = jet.d2.inner(&jet.d1);
        let p1 = jet.d3.inner(&jet.d1) + jet.d2.inner(&jet.d2);
        let v1 = -p / v;
        let v2 = -p1 / v - p * p / (v * v * v);
        let u1 = 1.0 / v;
        let u2 = -v1 / (v * v * v);
        let u3 = -v2 / v.powi(4) + 3.0 * v1 * v1 / v.powi(5);
        CurveJet {
            position: jet.position,
            d1: jet.d1.scale(u1),
            d2: jet.d2.scale(u1 * u1) + jet.d1.scale(u2),
            d3: jet.d3.scale(u1 * u1 * u1)
                + jet.d2.scale(3.0 * u1 * u2)
                + jet.d1.scale(u3),
        }
    }
}

/// Reparametrize `curve` by arclength.
///
/// `quad_steps` is the minimum number of quadrature panels for the
/// arclength table (at least 16); the implementation may use more. The
/// result's parameter interval starts at the original domain's left
/// endpoint and spans the curve's total arclength. Fails with
/// [`Error::NotTimelike`] if the velocity is not strictly timelike at
/// every quadrature node, endpoints included.
pub fn reparametrize_unit_speed(
    curve: &TimelikeCurve,
    quad_steps: usize,
) -> Result<TimelikeCurve> {
    if quad_steps < 16 {
        return Err(Error::DomainViolation {
            name: "quad_steps",
            value: quad_steps as f64,
            min: 16.0,
            max: f64::INFINITY,
        });
    }
    let (u0, u1) = curve.domain();
    let panels = quad_steps.max(256);
    let du = (u1 - u0) / panels as f64;
    // Endpoint speeds participate in the quadrature nodes only in the
    // interior, so check them explicitly: a curve that goes null at the
    // boundary has no arclength parametrization on the closed interval.
    speed(curve, u0)?;
    speed(curve, u1)?;
    let mut cum = Vec::with_capacity(panels + 1);
    cum.push(0.0);
    let mut acc = 0.0;
    for k in 0..panels {
        let a = u0 + du * k as f64;
        let b = if k + 1 == panels { u1 } else { u0 + du * (k + 1) as f64 };
        acc += gl5(curve, a, b)?;
        cum.push(acc);
    }
    let total = acc;
    let label = format!("{}-arclength", curve.label());
    let source = curve.jet_source();
    let rep = Reparametrized { base: curve.clone(), u0, du, cum };
    Ok(TimelikeCurve::from_parts(
        Arc::new(rep),
        (u0, u0 + total),
        source,
        label,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurvePreset, JetSource};
    use crate::minkowski::MinkVector;
    use crate::tol;
    use approx::assert_relative_eq;

    fn unit_helix() -> TimelikeCurve {
        TimelikeCurve::preset(CurvePreset::Helix { a: 2.0_f64.sqrt(), b: 1.0, omega: 1.0 })
            .unwrap()
    }

    fn arclength_polynomial() -> TimelikeCurve {
        let poly = TimelikeCurve::preset(CurvePreset::Polynomial).unwrap();
        reparametrize_unit_speed(&poly, 64).unwrap()
    }

    #[test]
    fn too_few_quadrature_steps_are_rejected() {
        let poly = TimelikeCurve::preset(CurvePreset::Polynomial).unwrap();
        let err = reparametrize_unit_speed(&poly, 8).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { name: "quad_steps", .. }));
    }

    #[test]
    fn unit_speed_curve_reparametrizes_to_itself() {
        let helix = unit_helix();
        let again = reparametrize_unit_speed(&helix, 64).unwrap();
        assert_relative_eq!(again.domain().0, helix.domain().0, epsilon = 1e-12);
        assert_relative_eq!(again.domain().1, helix.domain().1, epsilon = 1e-9);
        for s in helix.param_grid(17) {
            let a = helix.jet(s);
            let b = again.jet(s);
            assert!((a.position - b.position).euclid_norm_sq().sqrt() <= 1e-9);
            assert!((a.d1 - b.d1).euclid_norm_sq().sqrt() <= 1e-9);
            assert!((a.d2 - b.d2).euclid_norm_sq().sqrt() <= 1e-9);
            assert!((a.d3 - b.d3).euclid_norm_sq().sqrt() <= 1e-9);
        }
    }

    #[test]
    fn polynomial_becomes_unit_speed() {
        let c = arclength_polynomial();
        c.validate_unit_speed(64, tol::UNIT_SPEED_TOL).unwrap();
        // Spot-check well inside the tolerance at scattered parameters.
        let (s0, s1) = c.domain();
        for i in 0..10 {
            let s = s0 + (s1 - s0) * (0.05 + 0.09 * i as f64);
            let d1 = c.jet(s).d1;
            assert!((d1.inner(&d1) + 1.0).abs() <= 1e-6);
        }
    }

    /// Independent inversion oracle: march a fine Simpson accumulation of
    /// the speed to find u(s) by bisection, then compare positions.
    #[test]
    fn arclength_inverse_matches_simpson_bisection_oracle() {
        let poly = TimelikeCurve::preset(CurvePreset::Polynomial).unwrap();
        let c = arclength_polynomial();
        let (u0, u1) = poly.domain();
        let speed_at = |u: f64| {
            let d1 = poly.jet(u).d1;
            (-d1.inner(&d1)).sqrt()
        };
        // Composite Simpson cumulative integral on a fine grid.
        let n = 20_000usize; // even
        let h = (u1 - u0) / n as f64;
        let simpson_to = |u: f64| -> f64 {
            let mut acc = 0.0;
            let mut a = u0;
            while a + 2.0 * h <= u + 1e-15 {
                acc += h / 3.0 * (speed_at(a) + 4.0 * speed_at(a + h) + speed_at(a + 2.0 * h));
                a += 2.0 * h;
            }
            // Last partial piece via one Simpson step on [a, u].
            if u > a {
                let m = 0.5 * (a + u);
                acc += (u - a) / 6.0 * (speed_at(a) + 4.0 * speed_at(m) + speed_at(u));
            }
            acc
        };
        let (s0, s1) = c.domain();
        for frac in [0.1, 0.35, 0.5, 0.72, 0.9] {
            let s = s0 + (s1 - s0) * frac;
            let target = s - s0;
            let (mut lo, mut hi) = (u0, u1);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if simpson_to(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let u_oracle = 0.5 * (lo + hi);
            let expected = poly.jet(u_oracle).position;
            let got = c.jet(s).position;
            assert!(
                (expected - got).euclid_norm_sq().sqrt() <= 1e-9,
                "position mismatch at s={s}: oracle {expected:?}, got {got:?}"
            );
        }
    }

    #[test]
    fn reparametrization_is_idempotent() {
        let once = arclength_polynomial();
        let twice = reparametrize_unit_speed(&once, 64).unwrap();
        assert_relative_eq!(once.domain().1, twice.domain().1, epsilon = 1e-9);
        for s in once.param_grid(17) {
            let a = once.jet(s);
            let b = twice.jet(s);
            assert!((a.position - b.position).euclid_norm_sq().sqrt() <= 1e-9);
            assert!((a.d1 - b.d1).euclid_norm_sq().sqrt() <= 1e-9);
            assert!((a.d2 - b.d2).euclid_norm_sq().sqrt() <= 1e-8);
        }
    }

    #[test]
    fn null_endpoint_fails() {
        let c = TimelikeCurve::from_fn("null-end", (-1.0, 0.0), |u| CurveJet {
            position: MinkVector::new(u, u * u / 2.0, 0.0),
            d1: MinkVector::new(1.0, u, 0.0),
            d2: MinkVector::new(0.0, 1.0, 0.0),
            d3: MinkVector::ZERO,
        })
        .unwrap();
        let err = reparametrize_unit_speed(&c, 64).unwrap_err();
        assert!(matches!(err, Error::NotTimelike { .. }));
    }

    #[test]
    fn source_tag_is_inherited() {
        assert_eq!(arclength_polynomial().jet_source(), JetSource::Analytic);
    }

    /// Chain-rule jets are true derivatives: centered differences of the
    /// reparametrized position/d1/d2 reproduce d1/d2/d3.
    #[test]
    fn jets_are_consistent_under_differencing() {
        let c = arclength_polynomial();
        let (s0, s1) = c.domain();
        let h = 1e-5;
        for frac in [0.2, 0.5, 0.8] {
            let s = s0 + (s1 - s0) * frac;
            let jm = c.jet(s - h);
            let jp = c.jet(s + h);
            let j = c.jet(s);
            let d1_fd = (jp.position - jm.position).scale(1.0 / (2.0 * h));
            let d2_fd = (jp.d1 - jm.d1).scale(1.0 / (2.0 * h));
            let d3_fd = (jp.d2 - jm.d2).scale(1.0 / (2.0 * h));
            assert!((d1_fd - j.d1).euclid_norm_sq().sqrt() <= 1e-7);
            assert!((d2_fd - j.d2).euclid_norm_sq().sqrt() <= 1e-6);
            assert!((d3_fd - j.d3).euclid_norm_sq().sqrt() <= 1e-5);
        }
    }
}
