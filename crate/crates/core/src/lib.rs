//! Exact combinatorics of dihedral pseudoline arrangements.
//!
//! * [`incidence`]: incidence structures with the α-pair property and their statistics.
//! * [`acc`]: the `.acc` text format.
//! * [`bounds`]: exact audits of incidence inequalities.
//! * [`kaleidoscope`]: wedges, their dihedral expansion, and generators.
//! * [`finite_plane`]: line arrangements in PG(2, p).
//! * [`render`]: SVG output.
//! * [`cli`]: the `wedgework` command line.

pub mod acc;
pub mod bounds;
pub mod cli;
pub mod finite_plane;
pub mod incidence;
pub mod kaleidoscope;
pub mod render;

pub use acc::{parse_structure, serialize_structure, ParseError, ParseErrorKind};
pub use incidence::{
    compute_stats, validate, CurveId, IncidenceStructure, Stats, StatsError, StructureError,
    ValidationReport, Violation,
};
