//! Cross-checking every closed-form quantity against its definitional
//! oracle, with a deterministic plain-text report.
//!
//! Three comparison groups run over a full grid:
//!
//! 1. fundamental-form coefficients from the closed forms versus inner
//!    products of analytic surface jets, plus the two discriminant
//!    identities `EG - F^2 = -alpha^2 r^2` and `eg - f^2 =
//!    -r kappa alpha cos(theta)`;
//! 2. curvature values versus their definitions: `K` against the shape
//!    ratio of the forms, `H` against the mean shape ratio (magnitude
//!    plus a global sign-ratio constancy check), and `K_II` against the
//!    finite-difference determinant oracle;
//! 3. the six closed-form partial derivatives versus central differences
//!    of their parent fields.
//!
//! Two findings are always surfaced rather than hidden: the mean
//! curvature's globally constant sign ratio between the two routes, and
//! the fate of the variant transcription of `dK_II/dt` (whose
//! `4 r cos^2` term lacks a `kappa'` factor), which the difference
//! oracle refutes.

use minktube::error::Result;
use minktube::surface::{
    fundamental_forms, gaussian_curvature, mean_curvature, second_gaussian_curvature, Metric,
};
use minktube::tol;
use minktube::tube::{TubeGrid, TubeSurface};

/// Tolerances for the comparison groups, overridable from the command
/// line.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Form-coefficient agreement.
    pub tol_forms: f64,
    /// Discriminant identities.
    pub tol_identity: f64,
    /// `K` and `|H|` agreement.
    pub tol_curvature: f64,
    /// `K_II` versus the finite-difference determinant oracle.
    pub tol_kii: f64,
    /// Closed-form partials versus central differences.
    pub tol_partials: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol_forms: 1e-7,
            tol_identity: 1e-9,
            tol_curvature: 1e-6,
            tol_kii: 1e-3,
            tol_partials: 1e-5,
        }
    }
}

/// Running maximum of relative errors over one compared field.
///
/// "Relative" uses a floor of `1e-6` times the field's largest magnitude
/// (or a caller-supplied reference scale, whichever is larger), so points
/// where the field crosses zero — or fields that vanish identically, like
/// the `t`-derivatives on a constant-curvature axis — are judged against
/// a meaningful scale instead of demanding impossible relative accuracy
/// against zero.
struct FieldComparison {
    name: String,
    tol: f64,
    ref_scale: f64,
    pairs: Vec<(f64, f64)>,
}

impl FieldComparison {
    fn new(name: &str, tol: f64) -> FieldComparison {
        FieldComparison { name: name.to_string(), tol, ref_scale: 0.0, pairs: Vec::new() }
    }

    /// A comparison whose floor also respects an external scale — used
    /// for derivative fields, whose natural scale is the parent field's
    /// variation per unit parameter even when the derivative itself is
    /// identically zero.
    fn with_ref_scale(name: &str, tol: f64, ref_scale: f64) -> FieldComparison {
        FieldComparison { name: name.to_string(), tol, ref_scale, pairs: Vec::new() }
    }

    fn push(&mut self, closed: f64, oracle: f64) {
        self.pairs.push((closed, oracle));
    }

    fn max_rel(&self) -> f64 {
        let scale = self
            .pairs
            .iter()
            .map(|(c, _)| c.abs())
            .fold(0.0f64, f64::max)
            .max(self.ref_scale)
            .max(tol::SCALE_FLOOR);
        let floor = 1e-6 * scale;
        self.pairs
            .iter()
            .map(|(c, o)| (c - o).abs() / c.abs().max(o.abs()).max(floor))
            .fold(0.0f64, f64::max)
    }
}

/// Accumulated comparison report: the human-readable text plus the
/// check/failure tally that decides the verdict.
#[derive(Default)]
pub struct Report {
    pub text: String,
    pub checks: usize,
    pub failures: usize,
}

impl Report {
    pub fn new() -> Report {
        Report { text: String::new(), checks: 0, failures: 0 }
    }

    fn line(&mut self, s: &str) {
        self.text.push_str(s);
        self.text.push('\n');
    }

    fn check(&mut self, pass: bool, body: &str) {
        self.checks += 1;
        if !pass {
            self.failures += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        self.line(&format!("{tag} {body}"));
    }

    fn field(&mut self, cmp: &FieldComparison) {
        let rel = cmp.max_rel();
        self.check(
            rel <= cmp.tol,
            &format!(
                "{}: max rel {:.3e} (tol {:.1e}, {} points)",
                cmp.name,
                rel,
                cmp.tol,
                cmp.pairs.len()
            ),
        );
    }
}

/// Run every comparison on one tube and return the report text plus the
/// overall verdict.
pub fn run_verify(
    tube: &TubeSurface,
    nt: usize,
    ntheta: usize,
    opts: &VerifyOptions,
) -> Result<(String, bool)> {
    let grid = tube.evaluate_grid(nt, ntheta)?;
    let mut report = Report::new();
    report.line(&format!(
        "== closed forms vs definitional oracles: {} r={:.3}, grid {}x{} ==",
        tube.curve().label(),
        tube.radius(),
        nt,
        ntheta
    ));

    compare_forms(tube, &grid, opts, &mut report)?;
    compare_curvatures(tube, &grid, opts, &mut report)?;
    compare_partials(tube, &grid, opts, &mut report)?;

    let pass = report.failures == 0;
    report.line(&format!(
        "VERIFY {} ({} checks, {} failed)",
        if pass { "PASS" } else { "FAIL" },
        report.checks,
        report.failures
    ));
    Ok((report.text, pass))
}

/// Compare the six closed-form fundamental-form coefficients against
/// inner products of analytic surface jets, then check the two
/// discriminant identities.
pub fn compare_forms(
    tube: &TubeSurface,
    grid: &TubeGrid,
    opts: &VerifyOptions,
    report: &mut Report,
) -> Result<()> {
    report.line("-- fundamental forms: closed forms vs jet oracle --");
    let patch = tube.patch();
    let r = tube.radius();
    // A coefficient that vanishes identically (F and f on a zero-torsion
    // axis) is judged against its whole form's magnitude.
    let form_scale = |pick: &dyn Fn(&minktube::tube::TubePointData) -> (f64, f64, f64)| {
        grid.points
            .iter()
            .map(|p| {
                let (a, b, c) = pick(p);
                a.abs().max(b.abs()).max(c.abs())
            })
            .fold(0.0f64, f64::max)
    };
    let first_scale = form_scale(&|p| (p.first.e, p.first.f, p.first.g));
    let second_scale = form_scale(&|p| (p.second.e, p.second.f, p.second.g));
    let mut cmps = [
        FieldComparison::with_ref_scale("E", opts.tol_forms, first_scale),
        FieldComparison::with_ref_scale("F", opts.tol_forms, first_scale),
        FieldComparison::with_ref_scale("G", opts.tol_forms, first_scale),
        FieldComparison::with_ref_scale("e", opts.tol_forms, second_scale),
        FieldComparison::with_ref_scale("f", opts.tol_forms, second_scale),
        FieldComparison::with_ref_scale("g", opts.tol_forms, second_scale),
    ];
    let mut first_disc = FieldComparison::new("EG - F^2 = -alpha^2 r^2", opts.tol_identity);
    let mut second_disc =
        FieldComparison::new("eg - f^2 = -r kappa alpha cos(theta)", opts.tol_identity);
    for p in &grid.points {
        let forms = fundamental_forms(Metric::Lorentzian, &patch, p.t, p.theta)?;
        cmps[0].push(p.first.e, forms.first.e);
        cmps[1].push(p.first.f, forms.first.f);
        cmps[2].push(p.first.g, forms.first.g);
        cmps[3].push(p.second.e, forms.second.e);
        cmps[4].push(p.second.f, forms.second.f);
        cmps[5].push(p.second.g, forms.second.g);
        first_disc.push(p.first.discriminant(), -(p.alpha * p.alpha) * r * r);
        second_disc
            .push(p.second.discriminant(), -r * p.kappa * p.alpha * p.theta.cos());
    }
    for cmp in &cmps {
        report.field(cmp);
    }
    report.field(&first_disc);
    report.field(&second_disc);
    Ok(())
}

/// Compare `K`, `|H|` (with the global sign-ratio constancy check), and
/// `K_II` against their definitional oracles.
pub fn compare_curvatures(
    tube: &TubeSurface,
    grid: &TubeGrid,
    opts: &VerifyOptions,
    report: &mut Report,
) -> Result<()> {
    report.line("-- curvature: closed forms vs definitional oracles --");
    let patch = tube.patch();
    let mut k_cmp = FieldComparison::new("K", opts.tol_curvature);
    let mut h_cmp = FieldComparison::new("|H|", opts.tol_curvature);
    let mut ratios: Vec<f64> = Vec::with_capacity(grid.points.len());
    for p in &grid.points {
        let forms = fundamental_forms(Metric::Lorentzian, &patch, p.t, p.theta)?;
        let k_oracle = gaussian_curvature(&forms)?;
        let h_oracle = mean_curvature(&forms)?;
        k_cmp.push(p.k, k_oracle);
        h_cmp.push(p.h.abs(), h_oracle.abs());
        ratios.push(h_oracle / p.h);
    }
    report.field(&k_cmp);
    report.field(&h_cmp);
    let ratio0 = ratios[0];
    let max_dev = ratios.iter().map(|r| (r - ratio0).abs()).fold(0.0f64, f64::max);
    report.check(
        max_dev <= 1e-9,
        &format!(
            "H sign ratio: oracle/closed = {ratio0:.1} at all {} points \
             (max deviation {max_dev:.3e})",
            ratios.len()
        ),
    );
    report.line(&format!(
        "FINDING the closed-form H and the definitional-oracle H differ by the \
         constant factor {ratio0:.1}; magnitudes agree, and the constant ratio is \
         reported rather than folded into either value"
    ));

    // Second Gaussian curvature against the stencil oracle.
    let total = grid.points.len();
    let valid: Vec<_> = grid.points.iter().filter(|p| p.kii_valid()).collect();
    if 2 * valid.len() < total {
        report.line(&format!(
            "SKIP K_II vs determinant oracle: only {}/{total} grid points have a \
             non-degenerate second form",
            valid.len()
        ));
        return Ok(());
    }
    let mut kii_cmp = FieldComparison::new("K_II vs determinant oracle", opts.tol_kii);
    let mut skipped = 0usize;
    for p in valid {
        match second_gaussian_curvature(Metric::Lorentzian, &patch, p.t, p.theta, None) {
            Ok(oracle) => kii_cmp.push(p.kii.expect("filtered on kii_valid"), oracle),
            // Stencil points can cross the degeneracy set even when the
            // center does not; those points prove nothing either way.
            Err(_) => skipped += 1,
        }
    }
    report.field(&kii_cmp);
    report.line(&format!(
        "INFO determinant-oracle coverage: {}/{} valid points compared, {} skipped \
         (stencil touched a degeneracy or domain edge)",
        kii_cmp.pairs.len(),
        kii_cmp.pairs.len() + skipped,
        skipped
    ));
    Ok(())
}

/// Richardson-extrapolated central difference from samples at `x - h`,
/// `x - h/2`, `x + h/2`, `x + h`: O(h^4) truncation.
fn rich_slope(fm: f64, fm_half: f64, fp_half: f64, fp: f64, h: f64) -> f64 {
    let coarse = (fp - fm) / (2.0 * h);
    let fine = (fp_half - fm_half) / h;
    (4.0 * fine - coarse) / 3.0
}

/// Compare the six closed-form partial derivatives against
/// Richardson-extrapolated central differences of their parent fields,
/// including the refutation of the variant `dK_II/dt` transcription.
pub fn compare_partials(
    tube: &TubeSurface,
    grid: &TubeGrid,
    opts: &VerifyOptions,
    report: &mut Report,
) -> Result<()> {
    report.line("-- partial derivatives: closed forms vs central differences --");
    let (t0, t1) = tube.curve().domain();
    // The t-direction slope uses the Richardson step: the closed-form
    // curvature fields can carry a few ulps of cancellation noise, and the
    // larger step keeps the rounding term of the difference quotient well
    // below the comparison tolerance while Richardson extrapolation holds
    // the truncation term down. The angular step stays smaller because
    // truncation, not rounding, dominates near the degeneracy circle.
    let h_t = tol::RICHARDSON_STEP_FRACTION * (t1 - t0);
    let h_th_base = tol::FD_STEP * std::f64::consts::TAU;
    // Reference scales: a derivative field is meaningfully zero when it
    // is small against its parent field's variation per unit parameter.
    let max_abs = |f: &dyn Fn(&minktube::tube::TubePointData) -> f64| {
        grid.points.iter().map(|p| f(p).abs()).fold(0.0f64, f64::max)
    };
    let k_scale_t = max_abs(&|p| p.k) / (t1 - t0);
    let k_scale_th = max_abs(&|p| p.k) / std::f64::consts::TAU;
    let h_scale_t = max_abs(&|p| p.h) / (t1 - t0);
    let h_scale_th = max_abs(&|p| p.h) / std::f64::consts::TAU;
    let kii_scale = max_abs(&|p| p.kii.unwrap_or(0.0));
    let mut cmps = [
        FieldComparison::with_ref_scale("dK/dt", opts.tol_partials, k_scale_t),
        FieldComparison::with_ref_scale("dK/dtheta", opts.tol_partials, k_scale_th),
        FieldComparison::with_ref_scale("dH/dt", opts.tol_partials, h_scale_t),
        FieldComparison::with_ref_scale("dH/dtheta", opts.tol_partials, h_scale_th),
    ];
    let mut kii_cmps = [
        FieldComparison::with_ref_scale("dK_II/dt", opts.tol_partials, kii_scale / (t1 - t0)),
        FieldComparison::with_ref_scale(
            "dK_II/dtheta",
            opts.tol_partials,
            kii_scale / std::f64::consts::TAU,
        ),
    ];
    let mut variant =
        FieldComparison::with_ref_scale("dK_II/dt variant", opts.tol_partials, kii_scale / (t1 - t0));
    for p in &grid.points {
        // The second curvature grows like 1/cos^2(theta) toward the
        // degeneracy circle, so the angular step shrinks with |cos| to
        // keep the difference quotient's truncation error bounded.
        let h_th = h_th_base * p.theta.cos().abs().max(0.2);
        let tp = tube.evaluate(p.t + h_t, p.theta)?;
        let tp_half = tube.evaluate(p.t + 0.5 * h_t, p.theta)?;
        let tm_half = tube.evaluate(p.t - 0.5 * h_t, p.theta)?;
        let tm = tube.evaluate(p.t - h_t, p.theta)?;
        let up = tube.evaluate(p.t, p.theta + h_th)?;
        let up_half = tube.evaluate(p.t, p.theta + 0.5 * h_th)?;
        let um_half = tube.evaluate(p.t, p.theta - 0.5 * h_th)?;
        let um = tube.evaluate(p.t, p.theta - h_th)?;
        cmps[0].push(p.k_t, rich_slope(tm.k, tm_half.k, tp_half.k, tp.k, h_t));
        cmps[1].push(p.k_theta, rich_slope(um.k, um_half.k, up_half.k, up.k, h_th));
        cmps[2].push(p.h_t, rich_slope(tm.h, tm_half.h, tp_half.h, tp.h, h_t));
        cmps[3].push(p.h_theta, rich_slope(um.h, um_half.h, up_half.h, up.h, h_th));
        if let (Some(kii_t), Some(kii_th), Some(var)) = (p.kii_t, p.kii_theta, p.kii_t_variant)
        {
            let t_stencil = [tm.kii, tm_half.kii, tp_half.kii, tp.kii];
            let th_stencil = [um.kii, um_half.kii, up_half.kii, up.kii];
            if t_stencil.iter().chain(&th_stencil).all(Option::is_some) {
                let tv: Vec<f64> = t_stencil.iter().map(|v| v.unwrap()).collect();
                let thv: Vec<f64> = th_stencil.iter().map(|v| v.unwrap()).collect();
                let fd_t = rich_slope(tv[0], tv[1], tv[2], tv[3], h_t);
                let fd_th = rich_slope(thv[0], thv[1], thv[2], thv[3], h_th);
                kii_cmps[0].push(kii_t, fd_t);
                kii_cmps[1].push(kii_th, fd_th);
                variant.push(var, fd_t);
            }
        }
    }
    for cmp in &cmps {
        report.field(cmp);
    }
    if kii_cmps[0].pairs.is_empty() {
        report.line(
            "SKIP dK_II/dt and dK_II/dtheta: no grid point kept a non-degenerate \
             difference stencil",
        );
        return Ok(());
    }
    for cmp in &kii_cmps {
        report.field(cmp);
    }
    let variant_rel = variant.max_rel();
    report.line(&format!(
        "FINDING the variant transcription of dK_II/dt (its 4 r cos^2 theta term \
         carrying no kappa' factor) disagrees with the difference oracle by max rel \
         {variant_rel:.3e}; the transcription the oracle supports is the one exported"
    ));
    Ok(())
}
