//! Constructive list-recoloring for sparse graphs.
//!
//! Given a graph `G`, a list assignment `L` and two proper L-colorings
//! `alpha` and `beta`, the solvers in [`solve`] build a recoloring sequence
//! from `alpha` to `beta` in which every intermediate coloring is proper and
//! every vertex is recolored a bounded number of times:
//!
//! * triangle-free planar graphs (embedding given), 7-assignments: at most 30;
//! * `mad(G) < 17/5`, 6-assignments: at most 12;
//! * `mad(G) < 22/9`, 4-assignments: at most 14;
//! * lists of size at least `2 * max_degree + 1`: at most 2.
//!
//! Each solver picks a reducible configuration ([`detect`]), deletes it,
//! recurses, and splices the configuration back in with one of the
//! extension procedures in [`extend`]. The structural lemmas behind the
//! detectors are audited per instance in [`discharge`], and tiny instances can
//! be cross-checked against the full recoloring graph in [`oracle`].

pub mod coloring;
pub mod detect;
pub mod discharge;
pub mod extend;
pub mod gen;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod solve;

/// Exact rational used for densities and charges.
pub type Rational = num_rational::Ratio<i64>;

pub use coloring::{Color, Coloring, ListAssignment, RecoloringSequence, Step};
pub use graph::{Graph, Vertex};
