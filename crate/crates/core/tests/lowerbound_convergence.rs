//! End-to-end behaviour of the adversarial two-column family: the measured
//! ratio climbs toward the analytic prediction as the family is refined, and
//! the detour that drives the prediction really exists in the built graph.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use pgram::analysis::{bound_h, spanning_ratio};
use pgram::construction::build_graph;
use pgram::geometry::ShapeSpec;
use pgram::lowerbound::{generate_worst_case, WorstCaseParams};

const SIZES: [usize; 3] = [20, 60, 200];
const EPSILONS: [f64; 3] = [1e-3, 1e-5, 1e-6];

fn measure(shape: &ShapeSpec, n: usize, epsilon: f64) -> f64 {
    let params = WorstCaseParams::new(shape.clone(), n, 1.0, None, epsilon, 0).unwrap();
    let points = generate_worst_case(&params).unwrap();
    let graph = build_graph(&points, shape).unwrap();
    spanning_ratio(&graph).unwrap().max_ratio
}

#[test]
fn refining_the_family_climbs_toward_the_prediction() {
    for shape in [
        ShapeSpec::new(1.0, FRAC_PI_2).unwrap(),
        ShapeSpec::new(2.0, FRAC_PI_3).unwrap(),
    ] {
        let limit = bound_h(&shape);
        let grid: Vec<Vec<f64>> = SIZES
            .iter()
            .map(|&n| EPSILONS.iter().map(|&e| measure(&shape, n, e)).collect())
            .collect();

        for row in &grid {
            for &measured in row {
                assert!(measured <= limit + 1e-9, "{measured} exceeds {limit}");
            }
        }
        // More points at fixed perturbation always helps.
        for col in 0..EPSILONS.len() {
            for step in 0..SIZES.len() - 1 {
                assert!(
                    grid[step + 1][col] >= grid[step][col] - 1e-6,
                    "ratio fell from {} to {} between n={} and n={}",
                    grid[step][col],
                    grid[step + 1][col],
                    SIZES[step],
                    SIZES[step + 1]
                );
            }
        }
        // Refining both knobs together closes in on the prediction, which
        // at the default beta is the worst-case bound itself.
        let diagonal = [grid[0][0], grid[1][1], grid[2][2]];
        assert!(diagonal[1] >= diagonal[0] - 1e-6);
        assert!(diagonal[2] >= diagonal[1] - 1e-6);
        let gaps = diagonal.map(|m| limit - m);
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps {gaps:?}");
        assert!(gaps[2] > 0.0, "the family approaches the limit from below");
    }
}

#[test]
fn the_stated_detour_walk_is_a_graph_path() {
    let shape = ShapeSpec::new(2.0, FRAC_PI_3).unwrap();
    let epsilon = 1e-6;
    let params = WorstCaseParams::new(shape.clone(), 60, 1.0, None, epsilon, 3).unwrap();
    let m = params.n / 2;
    let points = generate_worst_case(&params).unwrap();
    let graph = build_graph(&points, &shape).unwrap();
    let edges = graph.edge_pairs();

    // Walking down the first column and hopping to b must be available:
    // consecutive rungs, then the long diagonal from the column's foot.
    for i in 0..m - 1 {
        assert!(edges.contains(&(i, i + 1)), "missing rung ({i}, {})", i + 1);
    }
    assert!(edges.contains(&(m - 1, m)), "missing the final hop to b");

    let walk: f64 = (0..m - 1)
        .map(|i| points[i].dist(points[i + 1]))
        .sum::<f64>()
        + points[m - 1].dist(points[m]);
    let a = shape.aspect();
    let h = (1.0 + a * a + 2.0 * a * shape.angle().cos()).sqrt();
    let detour = params.alpha * (a + h) + params.beta;
    assert!(
        (walk - detour).abs() <= 10.0 * epsilon,
        "walk {walk} vs detour {detour}"
    );

    let report = spanning_ratio(&graph).unwrap();
    let anchors = report
        .per_pair
        .iter()
        .find(|p| p.pair == [0, m])
        .expect("anchor pair is present");
    assert!(anchors.d_graph <= walk + 1e-12);
}
