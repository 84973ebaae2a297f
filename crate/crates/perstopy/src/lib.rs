//! Persistent fundamental groups of finite metric spaces.
//!
//! This crate computes, for a finite metric space given by its distance
//! matrix:
//!
//! * Vietoris-Rips 2-skeletons and edge-path presentations of the discrete
//!   fundamental group `pi_1^eps` at every scale, assembled into a persistent
//!   fundamental group with structure maps and critical values ([`pi1`]);
//! * discrete loops, epsilon-homotopy (both a brute-force search over basic
//!   moves and a word-problem route through the edge-path presentation), the
//!   loop-space pseudo-ultrametric `mu^(1)`, and generalized subdendrograms
//!   ([`loops`]);
//! * integer and rational homology of the 2-skeleton, persistence diagrams in
//!   dimensions 0 and 1, the single-linkage ultrametric `mu^(0)`, and a
//!   Hurewicz (abelianization) cross-check ([`homology`]);
//! * bottleneck distances, interleaving distances between interval persistent
//!   groups over the catalog {trivial, free, free abelian}, and dendrogram
//!   machinery ([`distances`]);
//! * exact Gromov-Hausdorff distances on desk-scale inputs by correspondence
//!   search, the pointed variant, and a battery of certified lower bounds
//!   ([`gh`]).
//!
//! The `perstopy` binary exposes all of it on the command line; `verify`
//! re-runs the reproducibility suite that pins the published values.

pub mod complex;
pub mod distances;
pub mod gh;
pub mod homology;
pub mod loops;
pub mod metric;
pub mod pi1;
pub mod presentation;
pub mod snf;
pub mod verify;

/// Absolute tolerance for floating-point comparisons at API level.
///
/// Distances are either small integers or rational multiples of pi, so a
/// fixed absolute tolerance is appropriate.
pub const TOL: f64 = 1e-9;

/// Tighter tolerance used for internal consistency checks (metric axioms).
pub const TOL_INTERNAL: f64 = 1e-12;

pub use metric::{FiniteMetricSpace, PointedMetricSpace};
pub use presentation::{GroupClass, GroupPresentation, Word};
