//! Command-line front end for tube curvature analysis in Minkowski
//! 3-space.
//!
//! Subcommands:
//!
//! * `mesh` — export a triangulated OBJ of the tube surface;
//! * `curvature` — export the curvature fields (K, both mean-curvature
//!   conventions, K_II with its validity mask) as CSV;
//! * `classify` — run the Weingarten / linear-Weingarten verification
//!   suite and report PASS/FAIL per theorem;
//! * `verify` — cross-check every closed form against its definitional
//!   oracle and report residuals and findings.
//!
//! Exit codes: `0` success, `1` a verification or classification check
//! failed, `2` invalid arguments or tube construction failure, `3` I/O
//! failure, `4` curve-table parse failure.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use minktube::error::Error;
use minktube::weingarten::{default_fixture_curves, theorem_suite, SuiteConfig};
use minktube_cli::job::{self, FrameSpec};
use minktube_cli::{output, verify};

#[derive(Parser)]
#[command(
    name = "minktube",
    about = "Curvature analysis of timelike tubes in Minkowski 3-space",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Axis-curve selection shared by the tube-building subcommands.
#[derive(Args, Debug)]
struct CurveArgs {
    /// Built-in axis curve: line, hyperbola, helix, or polynomial.
    #[arg(long, default_value = "helix", conflicts_with = "curve_csv")]
    curve: String,

    /// Helix parameters as `a=A,b=B,omega=W` (must satisfy
    /// a^2 - b^2 omega^2 = 1; helix preset only).
    #[arg(long)]
    params: Option<String>,

    /// Sampled axis curve: CSV with header `s,y1,y2,y3` and strictly
    /// increasing `s`.
    #[arg(long, value_name = "PATH")]
    curve_csv: Option<PathBuf>,

    /// Normal-plane frame for a straight axis: `auto` or
    /// `n1,n2,n3,b1,b2,b3`.
    #[arg(long, value_parser = job::parse_frame)]
    frame: Option<FrameSpec>,
}

impl CurveArgs {
    fn build_tube(&self, radius: f64) -> minktube::error::Result<minktube::TubeSurface> {
        let curve = job::build_curve(
            Some(self.curve.as_str()),
            self.params.as_deref(),
            self.curve_csv.as_deref(),
        )?;
        job::build_tube(curve, radius, self.frame.as_ref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Export a triangulated OBJ mesh of the tube.
    Mesh {
        #[command(flatten)]
        curve: CurveArgs,
        /// Tube radius (must stay below 1/sup kappa).
        #[arg(long)]
        radius: f64,
        /// Grid dimensions as NTxNTH (axis x angle).
        #[arg(long, default_value = "64x128", value_parser = job::parse_grid)]
        grid: (usize, usize),
        /// Output OBJ path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Also write per-vertex normals (vn records).
        #[arg(long)]
        normals: bool,
    },
    /// Export the curvature fields as CSV.
    Curvature {
        #[command(flatten)]
        curve: CurveArgs,
        /// Tube radius (must stay below 1/sup kappa).
        #[arg(long)]
        radius: f64,
        /// Grid dimensions as NTxNTH (axis x angle).
        #[arg(long, default_value = "64x128", value_parser = job::parse_grid)]
        grid: (usize, usize),
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Run the Weingarten / linear-Weingarten verification suite.
    Classify {
        /// Built-in axis curve; omit to run the default fixture set
        /// (helix, hyperbola, reparametrized polynomial, line).
        #[arg(long, conflicts_with = "curve_csv")]
        curve: Option<String>,

        /// Helix parameters as `a=A,b=B,omega=W` (helix preset only).
        #[arg(long)]
        params: Option<String>,

        /// Sampled axis curve CSV (header `s,y1,y2,y3`).
        #[arg(long, value_name = "PATH")]
        curve_csv: Option<PathBuf>,

        /// Tube radius; repeatable. Defaults to 0.1, 0.25, 0.4.
        /// Straight axes always become unit-radius cylinders.
        #[arg(long)]
        radius: Vec<f64>,

        /// Grid dimensions as NTxNTH (axis x angle).
        #[arg(long, default_value = "64x128", value_parser = job::parse_grid)]
        grid: (usize, usize),

        /// Also write the report to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,

        /// Normalized Jacobi-determinant bound for the (K,H) pair.
        #[arg(long, default_value_t = 1e-8)]
        tol_jacobi_kh: f64,

        /// Normalized Jacobi-determinant bound for pairs involving K_II
        /// on constant-curvature axes.
        #[arg(long, default_value_t = 1e-6)]
        tol_jacobi_kii: f64,

        /// Normalized residual bound for exact linear relations.
        #[arg(long, default_value_t = minktube::tol::LW_TOL)]
        tol_lw: f64,
    },
    /// Cross-check closed forms against definitional oracles.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        /// Tube radius (must stay below 1/sup kappa).
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
        /// Grid dimensions as NTxNTH (axis x angle).
        #[arg(long, default_value = "64x128", value_parser = job::parse_grid)]
        grid: (usize, usize),
        /// Also write the report to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Fundamental-form agreement tolerance (relative).
        #[arg(long, default_value_t = 1e-7)]
        tol_forms: f64,
        /// Discriminant-identity tolerance (relative).
        #[arg(long, default_value_t = 1e-9)]
        tol_identity: f64,
        /// K and |H| agreement tolerance (relative).
        #[arg(long, default_value_t = 1e-6)]
        tol_curvature: f64,
        /// K_II vs determinant-oracle tolerance (relative).
        #[arg(long, default_value_t = 1e-3)]
        tol_kii: f64,
        /// Partial-derivative agreement tolerance (relative).
        #[arg(long, default_value_t = 1e-5)]
        tol_partials: f64,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

/// Map library errors onto the documented exit codes: curve-table parse
/// failures carry line numbers (4), I/O failures pass through (3), and
/// everything else is a construction or validation failure (2).
fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CurveTable { .. } => 4,
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn dispatch(command: Command) -> minktube::error::Result<i32> {
    match command {
        Command::Mesh { curve, radius, grid, out, normals } => {
            let tube = curve.build_tube(radius)?;
            let data = tube.evaluate_grid(grid.0, grid.1)?;
            let mut buf = Vec::new();
            output::write_obj(&data, normals, &mut buf)?;
            fs::write(&out, buf)?;
            eprintln!(
                "wrote {} ({} vertices, {} faces)",
                out.display(),
                grid.0 * grid.1,
                2 * (grid.0 - 1) * grid.1
            );
            Ok(0)
        }
        Command::Curvature { curve, radius, grid, out } => {
            let tube = curve.build_tube(radius)?;
            let data = tube.evaluate_grid(grid.0, grid.1)?;
            let mut buf = Vec::new();
            output::write_curvature_csv(&tube, &data, &mut buf)?;
            fs::write(&out, buf)?;
            eprintln!("wrote {} ({} rows)", out.display(), grid.0 * grid.1);
            Ok(0)
        }
        Command::Classify {
            curve,
            params,
            curve_csv,
            radius,
            grid,
            out,
            tol_jacobi_kh,
            tol_jacobi_kii,
            tol_lw,
        } => {
            let curves = match (curve.as_deref(), curve_csv.as_deref()) {
                (None, None) => default_fixture_curves()?,
                (preset, csv) => vec![job::build_curve(preset, params.as_deref(), csv)?],
            };
            let radii = if radius.is_empty() { vec![0.1, 0.25, 0.4] } else { radius };
            let config = SuiteConfig {
                nt: grid.0,
                ntheta: grid.1,
                weingarten_kh_tol: tol_jacobi_kh,
                weingarten_kii_tol: tol_jacobi_kii,
                lw_tol: tol_lw,
                ..SuiteConfig::default()
            };
            let report = theorem_suite(&curves, &radii, &config)?;
            let text = format!("{report}\n");
            print!("{text}");
            std::io::stdout().flush().map_err(Error::Io)?;
            if let Some(path) = out {
                fs::write(&path, &text)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Verify {
            curve,
            radius,
            grid,
            out,
            tol_forms,
            tol_identity,
            tol_curvature,
            tol_kii,
            tol_partials,
        } => {
            let tube = curve.build_tube(radius)?;
            let opts = verify::VerifyOptions {
                tol_forms,
                tol_identity,
                tol_curvature,
                tol_kii,
                tol_partials,
            };
            let (text, pass) = verify::run_verify(&tube, grid.0, grid.1, &opts)?;
            print!("{text}");
            std::io::stdout().flush().map_err(Error::Io)?;
            if let Some(path) = out {
                fs::write(&path, &text)?;
            }
            Ok(if pass { 0 } else { 1 })
        }
    }
}
