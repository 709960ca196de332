//! Hat knot Floer homology of knots from grid diagrams.

pub mod arrangement;
pub mod braid;
pub mod complex;
pub mod domains;
pub mod gradings;
pub mod grid;
pub mod homology;
pub mod laurent;
pub mod linalg;
pub mod mos;
pub mod oval_complex;
pub mod ovals;
pub mod pipeline;
pub mod paths;
pub mod reduce;
pub mod report;
pub mod ring;
pub mod run;
pub mod simplify;

pub use braid::{parse_braid, BraidError};
pub use grid::{Axis, GridDiagram, GridError};
pub use homology::HFKTable;
pub use laurent::LaurentPoly;
pub use pipeline::{Pipeline, RunError, SkipPolicy};
pub use reduce::Strategy;
pub use report::{emit_report, parse_machine, Format, Mode, Report};
pub use ring::{Ring, RingKind, F2};
pub use run::{run, Input, RunConfig};

/// Integer coefficients.
pub type Z = i64;

pub type ZComplex = complex::SparseComplex<Z>;
pub type F2Complex = complex::SparseComplex<F2>;
