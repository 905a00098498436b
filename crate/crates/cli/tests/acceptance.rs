//! Nine-point acceptance gate for the whole pipeline.
//!
//! Each criterion prints exactly one PASS/FAIL line with its key numbers;
//! the test fails only after every criterion has been evaluated, so a red
//! run always shows the complete scoreboard. Criteria:
//!
//! 1. fundamental-form coefficients and discriminant identities on the
//!    unit-curvature helix tube;
//! 2. curvature closed forms against definitional oracles, with the mean
//!    curvature's global sign ratio surfaced;
//! 3. the six closed-form partial derivatives against difference
//!    oracles, with the variant transcription surfaced and refuted;
//! 4. every fixture tube is (K, H)-Weingarten;
//! 5. the constant-curvature dichotomy for the K_II pairs;
//! 6. the cylinder linear-relation family and its coefficient recovery;
//! 7. no linear relation ties K_II to K or H on curved fixtures;
//! 8. Frenet frames satisfy their defining system and recover the helix
//!    invariants;
//! 9. the command-line writers are byte-deterministic with exact counts.

use std::path::Path;
use std::process::Command;

use minktube::curve::frenet::frenet_frame;
use minktube::tube::TubeSurface;
use minktube::weingarten::{default_fixture_curves, theorem_suite, SuiteConfig};
use minktube_cli::verify::{
    compare_curvatures, compare_forms, compare_partials, Report, VerifyOptions,
};

const FIXTURE_RADII: [f64; 3] = [0.1, 0.25, 0.4];

/// Scan report text for `key<float>` occurrences and return the largest
/// parsed value (the numbers are printed in `{:e}` formats).
fn max_value_after(text: &str, key: &str) -> Option<f64> {
    let mut best: Option<f64> = None;
    for line in text.lines() {
        let mut rest = line;
        while let Some(idx) = rest.find(key) {
            rest = &rest[idx + key.len()..];
            let end = rest
                .find(|c: char| !(c.is_ascii_digit() || "+-.e".contains(c)))
                .unwrap_or(rest.len());
            if let Ok(v) = rest[..end].parse::<f64>() {
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

struct Gate {
    lines: Vec<(bool, String)>,
}

impl Gate {
    fn criterion(&mut self, number: usize, title: &str, outcome: Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(reason) => (false, reason),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        self.lines.push((pass, format!("{tag} criterion {number} ({title}): {detail}")));
    }
}

/// Run one comparison group on the helix tube and summarize it.
fn run_group(
    group: fn(&TubeSurface, &minktube::tube::TubeGrid, &VerifyOptions, &mut Report) -> minktube::Result<()>,
    tube: &TubeSurface,
    grid: &minktube::tube::TubeGrid,
) -> Report {
    let mut report = Report::new();
    group(tube, grid, &VerifyOptions::default(), &mut report).expect("comparison group failed to run");
    report
}

fn failing_lines(text: &str, limit: usize) -> String {
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).take(limit).collect();
    fails.join(" | ")
}

fn helix_tube(radius: f64) -> TubeSurface {
    let curves = default_fixture_curves().expect("fixture curves");
    TubeSurface::make(curves[0].clone(), radius).expect("helix tube")
}

fn criterion_1(report: &Report, points: usize) -> Result<String, String> {
    if points != 8192 {
        return Err(format!("expected 8192 grid points, got {points}"));
    }
    if report.failures > 0 {
        return Err(failing_lines(&report.text, 3));
    }
    let worst = max_value_after(&report.text, "max rel ").unwrap_or(f64::NAN);
    Ok(format!(
        "six form coefficients within 1e-7 and both discriminant identities within 1e-9 \
         at 8192 points (worst rel {worst:.3e})"
    ))
}

fn criterion_2(report: &Report) -> Result<String, String> {
    if report.failures > 0 {
        return Err(failing_lines(&report.text, 3));
    }
    if !report.text.contains("constant factor -1") {
        return Err("global mean-curvature sign ratio was not reported".to_string());
    }
    let worst = max_value_after(&report.text, "max rel ").unwrap_or(f64::NAN);
    Ok(format!(
        "K and |H| within 1e-6, K_II within 1e-3 of its difference oracle, \
         and the global H sign ratio -1 reported (worst rel {worst:.3e})"
    ))
}

fn criterion_3(report: &Report) -> Result<String, String> {
    if report.failures > 0 {
        return Err(failing_lines(&report.text, 3));
    }
    let finding = report
        .text
        .lines()
        .find(|l| l.contains("FINDING") && l.contains("variant transcription"))
        .ok_or("the variant transcription was not surfaced as a finding")?;
    let variant_rel = max_value_after(finding, "max rel ")
        .ok_or("variant finding does not state its disagreement")?;
    if variant_rel <= VerifyOptions::default().tol_partials {
        return Err(format!(
            "variant transcription unexpectedly agrees with the oracle (rel {variant_rel:.3e})"
        ));
    }
    let checks_only: String = report
        .text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect::<Vec<_>>()
        .join("\n");
    let worst = max_value_after(&checks_only, "max rel ").unwrap_or(f64::NAN);
    Ok(format!(
        "all six exported partials within 1e-5 of difference oracles (worst rel {worst:.3e}); \
         variant transcription refuted at rel {variant_rel:.3e}"
    ))
}

fn section_outcome(
    section: &minktube::weingarten::TheoremSection,
    detail: String,
) -> Result<String, String> {
    if section.passed() {
        let checks = section.lines.iter().filter(|l| l.pass.is_some()).count();
        Ok(format!("{detail} ({checks} checks)"))
    } else {
        let fails: Vec<&str> = section
            .lines
            .iter()
            .filter(|l| l.pass == Some(false))
            .map(|l| l.text.as_str())
            .take(3)
            .collect();
        Err(fails.join(" | "))
    }
}

fn frenet_defects(curve: &minktube::curve::TimelikeCurve) -> Result<f64, String> {
    let h = 1e-4;
    let (t0, t1) = curve.domain();
    let mut worst = 0.0f64;
    for s in curve.param_grid(33) {
        if s - h < t0 || s + h > t1 {
            continue;
        }
        let fm = frenet_frame(curve, s - h).map_err(|e| e.to_string())?;
        let fp = frenet_frame(curve, s + h).map_err(|e| e.to_string())?;
        let f = frenet_frame(curve, s).map_err(|e| e.to_string())?;
        let dt = (fp.t - fm.t).scale(1.0 / (2.0 * h));
        let dn = (fp.n - fm.n).scale(1.0 / (2.0 * h));
        let db = (fp.b - fm.b).scale(1.0 / (2.0 * h));
        for defect in [
            dt - f.n.scale(f.kappa),
            dn - (f.t.scale(f.kappa) + f.b.scale(f.tau)),
            db + f.n.scale(f.tau),
        ] {
            worst = worst.max(defect.euclid_norm_sq().sqrt());
        }
    }
    Ok(worst)
}

fn criterion_8() -> Result<String, String> {
    let curves = default_fixture_curves().map_err(|e| e.to_string())?;
    // Fixtures with a frame: helix, hyperbola, arclength polynomial.
    let mut worst_defect = 0.0f64;
    for curve in &curves[..3] {
        let defect = frenet_defects(curve)?;
        if defect > 1e-5 {
            return Err(format!(
                "Frenet system defect {defect:.3e} on '{}' exceeds 1e-5",
                curve.label()
            ));
        }
        worst_defect = worst_defect.max(defect);
    }

    // The helix preset (a, b, omega) = (sqrt(2), 1, 1) has kappa = b
    // omega^2 and |tau| = a omega.
    let mut worst_invariant = 0.0f64;
    for s in curves[0].param_grid(21) {
        let f = frenet_frame(&curves[0], s).map_err(|e| e.to_string())?;
        worst_invariant = worst_invariant
            .max((f.kappa - 1.0).abs())
            .max((f.tau.abs() - std::f64::consts::SQRT_2).abs());
    }
    if worst_invariant > 1e-9 {
        return Err(format!("helix invariant recovery error {worst_invariant:.3e} exceeds 1e-9"));
    }

    // The reparametrized polynomial must actually be unit-speed.
    let mut worst_speed = 0.0f64;
    for s in curves[2].param_grid(10) {
        let d1 = curves[2].jet(s).d1;
        worst_speed = worst_speed.max((d1.inner(&d1) + 1.0).abs());
    }
    if worst_speed > 1e-6 {
        return Err(format!("reparametrized speed deviation {worst_speed:.3e} exceeds 1e-6"));
    }

    Ok(format!(
        "Frenet system defects <= {worst_defect:.3e} on three fixtures; helix recovers \
         kappa = 1 and |tau| = sqrt(2) to {worst_invariant:.3e}; reparametrized speed \
         within {worst_speed:.3e} of unit"
    ))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_minktube"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(())
}

fn criterion_9(dir: &Path) -> Result<String, String> {
    let mesh_a = dir.join("a.obj");
    let mesh_b = dir.join("b.obj");
    for path in [&mesh_a, &mesh_b] {
        run_cli(&[
            "mesh", "--curve", "helix", "--radius", "0.3", "--grid", "64x128", "--out",
            path.to_str().unwrap(),
        ])?;
    }
    let bytes_a = std::fs::read(&mesh_a).map_err(|e| e.to_string())?;
    if bytes_a != std::fs::read(&mesh_b).map_err(|e| e.to_string())? {
        return Err("mesh reruns differ".to_string());
    }

    let text = String::from_utf8(bytes_a).map_err(|e| e.to_string())?;
    let vertices = text.lines().filter(|l| l.starts_with("v ")).count();
    let faces = text.lines().filter(|l| l.starts_with("f ")).count();
    if vertices != 64 * 128 || faces != 2 * 63 * 128 {
        return Err(format!("expected 8192 vertices / 16128 faces, got {vertices} / {faces}"));
    }

    let csv_a = dir.join("a.csv");
    let csv_b = dir.join("b.csv");
    for path in [&csv_a, &csv_b] {
        run_cli(&[
            "curvature", "--curve", "hyperbola", "--radius", "0.25", "--grid", "32x64", "--out",
            path.to_str().unwrap(),
        ])?;
    }
    let rows_a = std::fs::read(&csv_a).map_err(|e| e.to_string())?;
    if rows_a != std::fs::read(&csv_b).map_err(|e| e.to_string())? {
        return Err("curvature reruns differ".to_string());
    }
    let csv_rows = String::from_utf8(rows_a).map_err(|e| e.to_string())?.lines().count();
    if csv_rows != 1 + 32 * 64 {
        return Err(format!("expected 2048 data rows, got {}", csv_rows - 1));
    }

    Ok("mesh and curvature reruns byte-identical; OBJ has 8192 vertices and \
        16128 faces, CSV has 2048 rows"
        .to_string())
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new() };

    // Criteria 1-3 share one helix tube and grid.
    let tube = helix_tube(0.1);
    let grid = tube.evaluate_grid(64, 128).expect("helix grid");
    let forms = run_group(compare_forms, &tube, &grid);
    gate.criterion(1, "form identities", criterion_1(&forms, grid.points.len()));
    let curvatures = run_group(compare_curvatures, &tube, &grid);
    gate.criterion(2, "curvature closed forms", criterion_2(&curvatures));
    let partials = run_group(compare_partials, &tube, &grid);
    gate.criterion(3, "partial derivatives", criterion_3(&partials));

    // Criteria 4-7 share one theorem-suite run over the full fixture set.
    let curves = default_fixture_curves().expect("fixture curves");
    let suite = theorem_suite(&curves, &FIXTURE_RADII, &SuiteConfig::default())
        .expect("theorem suite failed to run");
    let by_id = |id: &str| {
        suite.sections.iter().find(|s| s.id == id).unwrap_or_else(|| panic!("no section {id}"))
    };
    gate.criterion(
        4,
        "every tube is (K,H)-Weingarten",
        section_outcome(
            by_id("T3.1"),
            "max normalized |Phi(K,H)| <= 1e-8 on every fixture tube".to_string(),
        ),
    );
    gate.criterion(
        5,
        "constant-curvature dichotomy",
        section_outcome(
            by_id("T3.2"),
            "constant-kappa residuals <= 1e-6, varying-kappa residuals >= 1e-4".to_string(),
        ),
    );
    gate.criterion(
        6,
        "cylinder linear relations",
        section_outcome(
            by_id("T3.3"),
            "five (a,c) probes on b = -2rc within 1e-12 and coefficients recovered".to_string(),
        ),
    );
    gate.criterion(
        7,
        "no linear K_II relation",
        section_outcome(
            by_id("T3.4"),
            "best-fit residuals >= 100x the linear-relation tolerance".to_string(),
        ),
    );

    gate.criterion(8, "frame correctness", criterion_8());

    let dir = tempfile::tempdir().expect("tempdir");
    gate.criterion(9, "determinism and I/O", criterion_9(dir.path()));

    let mut all_pass = true;
    for (pass, line) in &gate.lines {
        println!("{line}");
        all_pass &= pass;
    }
    assert!(all_pass, "acceptance criteria failed:\n{}", {
        gate.lines
            .iter()
            .filter(|(p, _)| !p)
            .map(|(_, l)| l.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    });
}
