//! Shared generators for the integration suites.

#![allow(dead_code)]

use pgram::construction::check_general_position;
use pgram::geometry::{Point, ShapeSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn shape(aspect: f64, angle: f64) -> ShapeSpec {
    ShapeSpec::new(aspect, angle).unwrap()
}

/// Uniform points in `[0, span)^2`, redrawn until the set is in general
/// position for `shape`. Deterministic in `seed`; coordinate collisions at
/// the 1e-9 scale are rare enough that a redraw almost never happens.
pub fn cloud(shape: &ShapeSpec, seed: u64, n: usize, span: f64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let points: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..span), rng.gen_range(0.0..span)))
            .collect();
        if check_general_position(&points, shape).ok {
            return points;
        }
    }
}
