//! Computational toolkit for Bott-integrable contact structures.
//!
//! The crate is organised bottom-up:
//!
//! * [`zlinalg`]: exact integer matrices, Smith normal form, homology of
//!   finite presentations and multigraph Betti numbers.
//! * [`cattorus`]: the mapping torus of Arnold's cat map and its explicit
//!   family of contact forms.
//! * [`curves`]: Lutz-type contact forms `h1(t) dx1 + h2(t) dx2`, their Reeb
//!   and transverse fields, winding, full Lutz twists and the critical
//!   surface perturbation.
//! * [`flow`]: fixed-step RK4 integration of Reeb flows with conservation
//!   diagnostics.
//! * [`graphlink`]: graph-manifold descriptions, the JSJ complex, graph-link
//!   representability and the overtwisted Bott-integrability verdict.
//! * [`cli`]: the `reeb-toolkit` command-line front end.
//!
//! Batch entry points take an [`Execution`] mode. With the default
//! `parallel` feature, [`Execution::Parallel`] fans out over rayon; without
//! it every mode runs sequentially.

pub mod cattorus;
pub mod cli;
pub mod curves;
mod error;
pub mod exec;
pub mod fixtures;
pub mod flow;
pub mod graphlink;
pub mod zlinalg;

pub use error::{Error, Result};
pub use exec::Execution;
