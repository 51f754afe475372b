//! Structural properties of the empty-homothet graph on random inputs:
//! planarity, sparsity, witness validity, and agreement with slow oracles.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;

use pgram::construction::{
    build_augmented, build_graph, check_general_position, face_count_report,
    grid_voronoi_oracle, planarity_violations, witness_violations, DEFAULT_SENTINEL_MARGIN,
};
use pgram::geometry::{Point, ShapeSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_shape() -> impl Strategy<Value = ShapeSpec> {
    (1.0..6.0f64, 0.2..FRAC_PI_2).prop_map(|(a, t)| ShapeSpec::new(a, t).unwrap())
}

fn edge_set(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    pairs.iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_graphs_are_planar_sparse_and_witnessed(
        shape in arb_shape(),
        seed in 0u64..1 << 20,
        n in 4usize..=14,
    ) {
        let points = common::cloud(&shape, seed, n, 10.0);
        let graph = build_graph(&points, &shape).unwrap();
        let crossings = planarity_violations(&graph.points, &graph.edge_pairs());
        prop_assert!(crossings.is_empty(), "crossing edges: {crossings:?}");
        prop_assert!(graph.edges.len() <= 3 * n - 6);
        let bad = witness_violations(&graph);
        prop_assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn augmented_faces_tile_the_working_square(
        shape in arb_shape(),
        seed in 0u64..1 << 20,
        n in 4usize..=14,
    ) {
        let points = common::cloud(&shape, seed, n, 10.0);
        let aug = build_augmented(&points, &shape, DEFAULT_SENTINEL_MARGIN).unwrap();
        let report = face_count_report(&aug);
        prop_assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn square_space_images_give_the_same_edges(
        shape in arb_shape(),
        seed in 0u64..1 << 20,
        n in 4usize..=12,
    ) {
        let points = common::cloud(&shape, seed, n, 10.0);
        let unit = ShapeSpec::new(1.0, FRAC_PI_2).unwrap();
        let images: Vec<Point> = points.iter().map(|&p| shape.to_square_space(p)).collect();
        let direct = build_graph(&points, &shape).unwrap();
        let mapped = build_graph(&images, &unit).unwrap();
        prop_assert_eq!(
            edge_set(&direct.edge_pairs()),
            edge_set(&mapped.edge_pairs())
        );
    }

    #[test]
    fn removing_a_point_never_kills_other_edges(
        shape in arb_shape(),
        seed in 0u64..1 << 20,
        n in 5usize..=12,
        victim_pick in 0usize..12,
    ) {
        let points = common::cloud(&shape, seed, n, 10.0);
        let victim = victim_pick % n;
        let before = build_graph(&points, &shape).unwrap();
        let mut rest = points.clone();
        rest.remove(victim);
        let after = build_graph(&rest, &shape).unwrap();
        let shifted: BTreeSet<(usize, usize)> = after
            .edge_pairs()
            .iter()
            .map(|&(a, b)| {
                let lift = |i: usize| if i >= victim { i + 1 } else { i };
                (lift(a), lift(b))
            })
            .collect();
        for (a, b) in before.edge_pairs() {
            if a == victim || b == victim {
                continue;
            }
            // The old witness square is still empty, so the edge must stay.
            prop_assert!(shifted.contains(&(a, b)), "lost edge ({a}, {b})");
        }
    }

    #[test]
    fn a_blocker_at_the_edge_midpoint_kills_it(
        shape in arb_shape(),
        seed in 0u64..1 << 20,
        n in 4usize..=10,
        edge_pick in 0usize..32,
    ) {
        let points = common::cloud(&shape, seed, n, 10.0);
        let graph = build_graph(&points, &shape).unwrap();
        prop_assume!(!graph.edges.is_empty());
        let edge = &graph.edges[edge_pick % graph.edges.len()];
        let qa = shape.to_square_space(points[edge.a]);
        let qb = shape.to_square_space(points[edge.b]);
        let spread = (qa.x - qb.x).abs().min((qa.y - qb.y).abs());
        prop_assume!(spread > 1e-3);
        // Any square touching both endpoints contains their midpoint at
        // Chebyshev depth at least spread / 2, so a point just off the
        // midpoint blocks every possible certificate at once.
        let eps = 1e-4 * spread;
        let blocker = Point::new(
            0.5 * (qa.x + qb.x) + eps,
            0.5 * (qa.y + qb.y) + 0.37 * eps,
        );
        let mut blocked = points.clone();
        blocked.push(shape.from_square_space(blocker));
        prop_assume!(check_general_position(&blocked, &shape).ok);
        let rebuilt = build_graph(&blocked, &shape).unwrap();
        prop_assert!(
            !rebuilt.edge_pairs().contains(&(edge.a, edge.b)),
            "edge ({}, {}) survived a blocker at its midpoint",
            edge.a,
            edge.b
        );
    }
}

#[test]
fn oracle_agrees_on_spread_out_sets() {
    let shapes = [
        common::shape(1.0, FRAC_PI_2),
        common::shape(2.0, 1.0),
        common::shape(4.0, 0.6),
    ];
    let resolution = 512;
    for (k, shape) in shapes.iter().enumerate() {
        for seed in 0..4u64 {
            let points = separated_cloud(shape, 1000 + 17 * k as u64 + seed, 7, resolution);
            let graph = build_graph(&points, shape).unwrap();
            let oracle = grid_voronoi_oracle(&points, shape, resolution).unwrap();
            let built: BTreeSet<(usize, usize)> = graph.edge_pairs().into_iter().collect();
            assert_eq!(
                built, oracle.edges,
                "shape {k}, seed {seed}: skipped {} cells",
                oracle.skipped_cells
            );
        }
    }
}

/// Like `common::cloud` but redraws until the square-space images keep a
/// pairwise Chebyshev separation of at least ten oracle cells, so region
/// adjacency cannot be lost to rasterization.
fn separated_cloud(shape: &ShapeSpec, seed: u64, n: usize, resolution: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let points: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)))
            .collect();
        if !check_general_position(&points, shape).ok {
            continue;
        }
        let sq: Vec<Point> = points.iter().map(|&p| shape.to_square_space(p)).collect();
        let extent = square_extent(&sq);
        let cell = 2.0 * extent / resolution as f64;
        let min_sep = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (sq[i].x - sq[j].x).abs().max((sq[i].y - sq[j].y).abs()))
            .fold(f64::INFINITY, f64::min);
        if min_sep >= 10.0 * cell {
            return points;
        }
    }
}

fn square_extent(sq: &[Point]) -> f64 {
    let (mut ulo, mut uhi, mut vlo, mut vhi) = (sq[0].x, sq[0].x, sq[0].y, sq[0].y);
    for q in sq {
        ulo = ulo.min(q.x);
        uhi = uhi.max(q.x);
        vlo = vlo.min(q.y);
        vhi = vhi.max(q.y);
    }
    (uhi - ulo).max(vhi - vlo)
}
