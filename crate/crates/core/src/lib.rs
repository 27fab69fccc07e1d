//! Exact computation of rational q,t-Catalan power series and the
//! Hogancamp–Mellit style series attached to torus links.
//!
//! Everything is exact: integer coefficients are arbitrary precision and
//! rational series keep their denominators as structured products of
//! factors `(1 - q^l)`.  The crate has two independent computation paths
//! for the same quantities:
//!
//! * [`solvers`] — memoized recursions on binary words and marker words,
//!   with rotation-cycle resolution (fast, closed forms);
//! * [`subsets`] — brute-force enumeration of (M,N)-invariant subsets of
//!   the nonnegative integers (slow, truncated series), used as an oracle
//!   to cross-check the recursions.
//!
//! On top of these, [`catalan`] assembles the rational q,t-Catalan series
//! `c_{M,N}(q,t)` and colored-knot Poincaré series, and [`treeviz`]
//! renders the decision trees traversed by the recursion as DOT graphs.

pub mod algebra;
pub mod catalan;
pub mod sequences;
pub mod solvers;
pub mod subsets;
pub mod treeviz;

pub use algebra::{LaurentPoly, RationalSeries};
pub use catalan::{CatalanResult, KnotSeries};
pub use sequences::{BinaryWord, Grid, Marker, MarkerWord};
pub use solvers::{RSolver, Solver};
pub use subsets::InvariantSubset;
pub use treeviz::TraceGraph;
