//! Delaunay graphs induced by empty homothets of a fixed parallelogram.
//!
//! The shape is pinned down by an aspect ratio and an interior angle; an edge
//! connects two sites exactly when some scaled translate of the shape touches
//! both without covering any third site. Everything downstream works in a
//! sheared "square space" where those translates become axis-aligned squares.
//!
//! The crate provides the brute-force graph construction, shortest-path
//! spanning-ratio measurement, the closed-form worst-case stretch bound, a
//! point-set generator that approaches that bound, and instrumented checks
//! for the chain of inequalities the bound rests on.

pub mod analysis;
pub mod construction;
pub mod geometry;
pub mod io;
pub mod lemma_verifier;
pub mod lowerbound;

/// Numeric tolerances shared across the crate.
///
/// Boundary and inequality slacks are absolute and assume inputs at desk
/// scale (coordinates up to ~1e4 after the square-space map); callers working
/// at wilder magnitudes should normalize first.
pub mod tol {
    /// On-boundary and shared-coordinate predicate slack, square-space units.
    pub const BOUNDARY: f64 = 1e-9;

    /// Slack granted when checking the path-length inequalities.
    pub const INEQUALITY: f64 = 1e-9;

    /// Exact-identity checks: matrix round trips, closed-form cross checks.
    pub const IDENTITY: f64 = 1e-12;

    /// Strictness margin for orientation signs and nearest-site ties.
    pub const ORIENTATION: f64 = 1e-12;

    /// Smallest accepted shape angle; bounds blow up like 1/sin(angle).
    pub const MIN_ANGLE: f64 = 1e-6;
}
