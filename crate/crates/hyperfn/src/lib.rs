//! # hyperfn
//!
//! Numerics for generalized functions represented as boundary values of
//! pairs of holomorphic defining functions, the analytic switch family
//! built from them, and the economic models that ride on top: impulse-series
//! preference hierarchies, structure-of-production analysis, interval-data
//! revenue projection, and an inflation sensitivity simulator.
//!
//! The crate is a library first. Each major capability has a runnable
//! example under `examples/`:
//!
//! ```bash
//! cargo run --example boundary_values      # evaluate catalog terms two ways
//! cargo run --example differintegration    # arbitrary integer-order d/dx
//! cargo run --example switch_tables        # analytic switches and truth tables
//! cargo run --example preference_choices   # value hierarchies and invariances
//! cargo run --example production_triangle  # structure distributions and triangles
//! cargo run --example inflation_sweep      # the welfare sensitivity experiment
//! cargo run --example revenue_projection   # interval-data discount models
//! ```
//!
//! A thin `hyperfn` binary exposes the same operations for scripting; see
//! the README for the subcommand list.

pub mod error;
pub mod eval;
pub mod hyperfunction;
pub mod inflation;
pub mod manifest;
pub mod poly;
pub mod preference;
pub mod production;
pub mod risk;
pub mod scalar;
pub mod switch;
pub mod term;

pub use error::HyperError;
pub use eval::EvalConfig;
pub use hyperfunction::Hyperfunction;
pub use scalar::ComplexScalar;
pub use term::{ClosedValue, HyperTerm, TermKind};
