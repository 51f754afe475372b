//! Generator for point sets whose graph spanning ratio approaches the
//! worst-case bound.
//!
//! The family places two near-vertical columns of evenly spaced points. The
//! left column starts at `a` (the origin) and runs straight down; the right
//! column starts at `b` and runs up. Every short path from `a` to `b` is then
//! forced to descend the left column and take one long diagonal hop, whose
//! length matches the numerator of [`predicted_ratio`]. Tiny monotone
//! horizontal shifts break the degeneracies the exact columns would have
//! while changing path lengths only by `O(epsilon)`. The two columns lean in
//! opposite directions, each toward the far anchor: that keeps every skipped
//! rung's certifying box blocked, so no shortcut edge survives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::bound_candidates;
use crate::construction::check_general_position;
use crate::geometry::{Point, ShapeSpec};

#[derive(Debug, Error)]
pub enum LowerBoundError {
    #[error("need an even point count of at least 4, got {0}")]
    BadCount(usize),
    #[error("alpha must be positive, got {0}")]
    BadAlpha(f64),
    #[error("beta must be nonnegative, got {0}")]
    BadBeta(f64),
    #[error("epsilon must lie in (0, {max:e}], got {got:e}")]
    BadEpsilon { max: f64, got: f64 },
    #[error("no general-position perturbation found after {0} attempts")]
    Degenerate(usize),
}

/// Parameters of the two-column family. `n` counts all points, half per
/// column; `b` sits `alpha` across and `beta` down in the frame of the
/// construction. `epsilon` caps the horizontal perturbation.
#[derive(Debug, Clone)]
pub struct WorstCaseParams {
    pub shape: ShapeSpec,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl WorstCaseParams {
    /// Validates the parameters. When `beta` is `None` it defaults to the
    /// ratio-maximizing multiple of `alpha`, so the family targets the
    /// global worst case.
    pub fn new(
        shape: ShapeSpec,
        n: usize,
        alpha: f64,
        beta: Option<f64>,
        epsilon: f64,
        seed: u64,
    ) -> Result<Self, LowerBoundError> {
        if n < 4 || n % 2 != 0 {
            return Err(LowerBoundError::BadCount(n));
        }
        if !(alpha > 0.0) {
            return Err(LowerBoundError::BadAlpha(alpha));
        }
        let beta = beta.unwrap_or_else(|| bound_candidates(&shape).f23_argmax * alpha);
        if !(beta >= 0.0) {
            return Err(LowerBoundError::BadBeta(beta));
        }
        let max = 1e-3 * alpha;
        if !(epsilon > 0.0 && epsilon <= max) {
            return Err(LowerBoundError::BadEpsilon { max, got: epsilon });
        }
        Ok(WorstCaseParams {
            shape,
            n,
            alpha,
            beta,
            epsilon,
            seed,
        })
    }
}

/// Builds the point family in original coordinates: the left column first
/// (`a` is index 0), then the right column (`b` is index `n / 2`).
///
/// Horizontal shifts grow linearly along each column with a dash of seeded
/// jitter: the left column leans east as it descends, the right column leans
/// west as it rises. That keeps each column strictly ordered and is almost
/// always enough for general position. If a degenerate alignment survives
/// anyway, the jitter is redrawn from follow-up seeds a few times before
/// giving up.
pub fn generate_worst_case(params: &WorstCaseParams) -> Result<Vec<Point>, LowerBoundError> {
    const ATTEMPTS: u64 = 10;
    let WorstCaseParams {
        shape,
        n,
        alpha,
        beta,
        epsilon,
        seed,
    } = params.clone();
    let m = n / 2;
    let (sin0, cos0) = shape.angle().sin_cos();
    let span = beta + alpha * shape.aspect();
    let step = span / (m - 1) as f64;

    for attempt in 0..=ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut shift = |i: usize| {
            epsilon * (i + 1) as f64 / n as f64
                + rng.gen_range(0.0..epsilon / (10.0 * n as f64))
        };
        let mut points = Vec::with_capacity(n);
        for i in 0..m {
            points.push(Point::new(shift(i), -(i as f64) * step));
        }
        for i in 0..m {
            // The column through b descends in frame units, which is upward
            // in original coordinates. It mirrors the first column: b is its
            // rightmost point, so the empty box certifying the long final
            // hop has nothing west of it, while every skipped rung stays
            // blocked by the points leaning into the box.
            let down = beta - i as f64 * step;
            points.push(Point::new(alpha * sin0 - shift(i), alpha * cos0 - down));
        }
        if check_general_position(&points, &shape).ok {
            return Ok(points);
        }
    }
    Err(LowerBoundError::Degenerate(ATTEMPTS as usize + 1))
}

/// The spanning ratio this family approaches as `n` grows and `epsilon`
/// shrinks: the forced detour over the straight-line distance between the
/// two column anchors.
pub fn predicted_ratio(shape: &ShapeSpec, alpha: f64, beta: f64) -> f64 {
    debug_assert!(alpha > 0.0 && beta >= 0.0);
    let a = shape.aspect();
    let c = shape.angle().cos();
    let detour = alpha * (a + (1.0 + a * a + 2.0 * a * c).sqrt()) + beta;
    detour / (alpha * alpha + beta * beta - 2.0 * alpha * beta * c).sqrt()
}
