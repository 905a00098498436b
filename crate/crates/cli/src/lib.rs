//! Library surface of the `minktube` command-line tool.
//!
//! The binary in `main.rs` only parses arguments and dispatches; the
//! work lives here so integration tests can drive the same code paths
//! directly:
//!
//! - [`job`]: curve/tube construction from CLI-level descriptions
//!   (preset names, parameter strings, sampled tables, frame flags).
//! - [`output`]: deterministic OBJ mesh and curvature-table writers.
//! - [`verify`]: the closed-form-versus-oracle comparison report.

pub mod job;
pub mod output;
pub mod verify;
