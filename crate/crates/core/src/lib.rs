//! Curvature analysis of timelike tubes in three-dimensional Minkowski
//! space.
//!
//! The ambient space is `R^3` with the Lorentzian inner product
//! `<u, v> = -u1 v1 + u2 v2 + u3 v3`. Around a unit-speed timelike curve,
//! a tube of radius `r` is swept by a circle of spacelike directions in
//! the normal plane; the resulting surface is timelike wherever the tube
//! is regular. This crate computes its curvature invariants — Gaussian
//! `K`, mean `H`, and the second Gaussian curvature `K_II` built from the
//! second fundamental form in place of the first — along two *independent*
//! routes:
//!
//! 1. closed-form expressions in the axis curvature `kappa`, torsion
//!    `tau`, radius `r`, and circle angle `theta` ([`tube`]);
//! 2. definitional evaluation from surface jets: fundamental forms, shape
//!    ratios, and a Brioschi-style determinant formula applied to the
//!    second form ([`surface`]).
//!
//! The agreement of the two routes is the correctness argument; it is
//! exercised wholesale by the verification suite in [`weingarten`], which
//! also settles four structural claims about tubes — which pairs of
//! invariants satisfy a Weingarten relation `Phi(X, Y) = 0`, and which
//! tubes admit a linear relation `aX + bY = c`.
//!
//! # Module map
//!
//! * [`minkowski`] — Lorentzian inner product, causal classification, and
//!   the Lorentzian cross product.
//! * [`curve`] — timelike curve presets, jets, Frenet frames along
//!   timelike curves, arclength reparametrization, and curves sampled
//!   from tables.
//! * [`surface`] — metric-generic fundamental forms, curvature ratios,
//!   and the finite-difference Brioschi evaluator (the oracle side).
//! * [`tube`] — tube construction with regularity checks, closed-form
//!   curvature fields with partial derivatives, and grid evaluation (the
//!   closed-form side).
//! * [`weingarten`] — Jacobi-determinant fields, trigonometric coefficient
//!   extraction, linear-relation search, and the four-part theorem suite.
//! * [`exec`] — parallel/sequential execution strategy (rayon behind the
//!   `parallel` feature).
//! * [`tol`] — every numerical tolerance, centrally documented.
//! * [`error`] — the crate-wide error enum.
//!
//! # Example
//!
//! ```
//! use minktube::curve::{CurvePreset, TimelikeCurve};
//! use minktube::tube::TubeSurface;
//!
//! // Unit-speed timelike helix with kappa = 1, tau = sqrt(2).
//! let axis = TimelikeCurve::preset(CurvePreset::Helix {
//!     a: std::f64::consts::SQRT_2,
//!     b: 1.0,
//!     omega: 1.0,
//! })?;
//! let tube = TubeSurface::make(axis, 0.25)?;
//! let p = tube.evaluate(1.0, 0.0)?;
//! // At theta = 0 the second Gaussian curvature equals |H| exactly.
//! assert!((p.kii.unwrap() - p.h.abs()).abs() < 1e-14);
//! # Ok::<(), minktube::error::Error>(())
//! ```

pub mod error;
pub mod tol;

pub mod exec;
pub mod minkowski;

pub mod curve;
pub mod surface;
pub mod tube;
pub mod weingarten;

pub use error::{Error, Result};
pub use minkowski::{CausalClass, MinkVector};
pub use tube::TubeSurface;
