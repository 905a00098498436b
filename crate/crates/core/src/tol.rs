//! Central registry of numerical tolerances.
//!
//! Every threshold used by the library lives here with a note on where it
//! comes from, so tests and the command-line tools agree on one set of
//! numbers. Thresholds fall into two families: *classification* tolerances
//! that decide a discrete property (causal character, degeneracy, verdicts)
//! and *agreement* tolerances that bound the distance between two ways of
//! computing the same quantity.

/// Causal classification cutoff for `|<v,v>|`, scaled by
/// `1 + |v|^2_euclid` so the verdict is meaningful for large vectors.
/// Doubles in [-10, 10]^3 carry ~1e-14 relative rounding per product, so
/// 1e-10 leaves four orders of margin while still catching genuinely
/// lightlike directions.
pub const CAUSAL_TOL: f64 = 1e-10;

/// Below this, a curvature value is treated as zero and no Frenet normal
/// is constructed. Second derivatives of the analytic presets are exact to
/// ~1e-15, so 1e-8 is far above noise yet far below any real curvature in
/// the fixture set (smallest is 0.5).
pub const KAPPA_FLOOR: f64 = 1e-8;

/// Acceptable deviation of `<d1,d1>` from -1 on an arclength-parametrized
/// curve, checked on a validation grid. Reparametrization solves the
/// arclength inverse to ~1e-14, and five-point stencils on dense sample
/// tables stay under 1e-8; 1e-7 accommodates both sources.
pub const UNIT_SPEED_TOL: f64 = 1e-7;

/// Jacobian-determinant (Weingarten) verdict threshold for normalized
/// residuals built from closed-form partials.
pub const JACOBI_TOL: f64 = 1e-7;

/// Same verdict threshold when the partials come from finite differences,
/// whose truncation error dominates rounding by a few orders.
pub const JACOBI_TOL_FD: f64 = 1e-4;

/// Verdict threshold for normalized linear-relation residuals
/// `|a*X + b*Y - c|`.
pub const LW_TOL: f64 = 1e-7;

/// Floor inserted into every normalization denominator so that residuals
/// over identically-zero fields divide by something harmless.
pub const SCALE_FLOOR: f64 = 1e-12;

/// Absolute cutoff on `|eg - f^2|` below which the second fundamental form
/// is declared degenerate (mask flag, Brioschi preconditions).
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Relative cutoff on `|EG - F^2|` below which shape ratios are refused.
pub const METRIC_DEGENERACY_TOL: f64 = 1e-14;

/// Condition-number ceiling for least-squares fits; beyond this the
/// coefficients carry no information.
pub const MAX_FIT_CONDITION: f64 = 1e8;

/// Step used by central-difference cross-checks of frame fields and
/// closed-form partial derivatives. With O(h^2) truncation and O(eps/h)
/// rounding, 1e-4 balances both near 1e-9 for smooth order-1 fields.
pub const FD_STEP: f64 = 1e-4;

/// Step, as a fraction of the domain span per axis, for
/// Richardson-extrapolated finite differences (the Brioschi stencil and
/// the smooth-direction derivative cross-checks). One extrapolation
/// level gives O(h^4) ~ 1e-11 truncation, and the step — a decade above
/// the plain-central-difference choice — keeps the rounding term
/// O(eps/h) near 1e-13 even for fields computed with a few ulps of
/// cancellation noise.
pub const RICHARDSON_STEP_FRACTION: f64 = 1e-3;

/// A curve counts as constant-curvature when `max |kappa'|` stays below
/// this. Analytic constant-curvature presets produce exact zeros; sampled
/// ones produce stencil noise well under 1e-8.
pub const KAPPA_CONST_TOL: f64 = 1e-8;

/// Fraction of grid points that must survive the degeneracy mask before
/// second-curvature statistics are reported.
pub const MIN_VALID_GRID_FRACTION: f64 = 0.5;

#[cfg(test)]
// These tests assert relations between constants on purpose: they pin the
// ordering the thresholds rely on, so editing one constant without the
// others breaks loudly here instead of deep inside a verdict.
#[allow(clippy::assertions_on_constants)]
mod tests {
    use super::*;

    /// The verdict thresholds have to sit strictly above the scale floor,
    /// otherwise normalization could manufacture failures out of noise.
    #[test]
    fn thresholds_clear_the_scale_floor() {
        for tol in [JACOBI_TOL, JACOBI_TOL_FD, LW_TOL] {
            assert!(tol > SCALE_FLOOR * 10.0);
        }
    }

    /// Finite-difference verdicts must be at least as forgiving as
    /// closed-form ones.
    #[test]
    fn fd_threshold_dominates_closed_form_threshold() {
        assert!(JACOBI_TOL_FD > JACOBI_TOL);
    }

    /// Degeneracy cutoffs are far below every curvature scale in the
    /// fixture set, so masks only fire near genuine zeros.
    #[test]
    fn degeneracy_cutoffs_are_small() {
        assert!(DEGENERACY_TOL < 1e-6);
        assert!(METRIC_DEGENERACY_TOL < DEGENERACY_TOL);
    }
}
