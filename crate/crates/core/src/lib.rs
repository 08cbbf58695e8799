//! Value sets of fractional ideals of curve singularities, modelled as good
//! semigroup ideals in Z^p.
//!
//! The crate computes duals through the Δ-condition, classifies maximals,
//! checks the symmetry between relative maximals of an ideal and absolute
//! maximals of its dual, reconstructs value sets from codimension-one
//! projections, and works with value-level standard bases. The `curveval`
//! module turns truncated branch parametrizations into candidate value sets.
//!
//! Window scans run on rayon when the `parallel` feature is enabled (the
//! default) and sequentially otherwise; results are identical either way.

pub mod curveval;
pub mod duality;
pub mod error;
pub mod examples;
pub mod fuzz;
pub mod generation;
pub mod io;
pub mod lattice;
pub mod maximals;
pub mod random;
pub mod scan;
pub mod semigroup;
pub mod stdbasis;

pub use error::{Error, Result};
pub use lattice::{IndexSet, Point, Window};
pub use semigroup::{GoodIdeal, GoodSemigroup, ValidationReport, Violation};
