//! Shortest paths, measured spanning ratios, and the closed-form bound.
//!
//! The worst-case stretch of the graph is governed by two families of ratio
//! functions of the slope parameter `r = yh_b / xh_b`, one for the flat slope
//! classes and one for the steep ones. Their maxima have closed forms; the
//! larger family, evaluated at the obtuse frame angle, gives the global bound
//! `bound_h`. Everything here is plain arithmetic on the shape parameters
//! plus Dijkstra over the built graphs.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, SQRT_2};
use thiserror::Error;

use crate::construction::DelaunayGraph;
use crate::geometry::{classify_scenario, GeometryError, Point, Scenario, ShapeSpec};
use crate::tol;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("graph is disconnected: no path between points {0} and {1}")]
    Disconnected(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// All-pairs shortest-path distances with predecessors, Euclidean weights.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    /// `dist[s][t]`, `INFINITY` when unreachable.
    pub dist: Vec<Vec<f64>>,
    /// `pred[s][t]` is the vertex before `t` on a shortest path from `s`.
    pub pred: Vec<Vec<Option<usize>>>,
}

impl DistanceTable {
    pub fn path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        if !self.dist[s][t].is_finite() {
            return None;
        }
        let mut rev = vec![t];
        let mut cur = t;
        while cur != s {
            cur = self.pred[s][cur]?;
            rev.push(cur);
        }
        rev.reverse();
        Some(rev)
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the closest node first.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from every source over the given undirected edge list.
pub fn shortest_path_table(points: &[Point], edges: &[(usize, usize)]) -> DistanceTable {
    let n = points.len();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        let w = points[a].dist(points[b]);
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    let rows: Vec<(Vec<f64>, Vec<Option<usize>>)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![f64::INFINITY; n];
            let mut pred = vec![None; n];
            let mut heap = BinaryHeap::new();
            dist[s] = 0.0;
            heap.push(HeapItem { dist: 0.0, node: s });
            while let Some(HeapItem { dist: d, node }) = heap.pop() {
                if d > dist[node] {
                    continue;
                }
                for &(next, w) in &adj[node] {
                    let cand = d + w;
                    if cand < dist[next] {
                        dist[next] = cand;
                        pred[next] = Some(node);
                        heap.push(HeapItem {
                            dist: cand,
                            node: next,
                        });
                    }
                }
            }
            (dist, pred)
        })
        .collect();
    let mut dist = Vec::with_capacity(n);
    let mut pred = Vec::with_capacity(n);
    for (d, p) in rows {
        dist.push(d);
        pred.push(p);
    }
    DistanceTable { dist, pred }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRatio {
    pub pair: [usize; 2],
    pub d_graph: f64,
    pub d_euclid: f64,
    pub ratio: f64,
    pub scenario: Scenario,
    pub per_pair_bound: f64,
}

#[derive(Debug, Serialize)]
pub struct RatioReport {
    pub max_ratio: f64,
    pub argmax_pair: [usize; 2],
    pub per_pair: Vec<PairRatio>,
}

/// Measures `d_graph / d_euclid` for every point pair, annotated with the
/// pair's slope class and its closed-form bound.
pub fn spanning_ratio(graph: &DelaunayGraph) -> Result<RatioReport, AnalysisError> {
    let table = shortest_path_table(&graph.points, &graph.edge_pairs());
    let n = graph.points.len();
    let mut per_pair = Vec::with_capacity(n * (n - 1) / 2);
    let mut max_ratio = f64::NEG_INFINITY;
    let mut argmax_pair = [0, 0];
    for i in 0..n {
        for j in i + 1..n {
            let d_graph = table.dist[i][j];
            if !d_graph.is_finite() {
                return Err(AnalysisError::Disconnected(i, j));
            }
            let d_euclid = graph.points[i].dist(graph.points[j]);
            let ratio = d_graph / d_euclid;
            let (frame, _) = classify_scenario(&graph.shape, graph.points[i], graph.points[j])?;
            let bound = per_pair_bound(&graph.shape, graph.points[i], graph.points[j])?;
            if ratio > max_ratio {
                max_ratio = ratio;
                argmax_pair = [i, j];
            }
            per_pair.push(PairRatio {
                pair: [i, j],
                d_graph,
                d_euclid,
                ratio,
                scenario: frame.scenario,
                per_pair_bound: bound,
            });
        }
    }
    Ok(RatioReport {
        max_ratio,
        argmax_pair,
        per_pair,
    })
}

/// Worst-case spanning ratio of the graph family for this shape:
/// `sqrt(2) * sqrt(1 + A^2 + 2A cos t0 + (A + cos t0) sqrt(1 + A^2 + 2A cos t0)) / sin t0`.
pub fn bound_h(shape: &ShapeSpec) -> f64 {
    let a = shape.aspect();
    let (s0, c0) = shape.angle().sin_cos();
    let q = 1.0 + a * a + 2.0 * a * c0;
    SQRT_2 * (q + (a + c0) * q.sqrt()).sqrt() / s0
}

/// Upper bound on the graph distance between `a` and `b`, in absolute length
/// units, from the pair's slope class and hat coordinates.
pub fn per_pair_bound(shape: &ShapeSpec, a: Point, b: Point) -> Result<f64, GeometryError> {
    let (frame, h) = classify_scenario(shape, a, b)?;
    let asp = shape.aspect();
    let ct = frame.theta.cos().abs();
    Ok(match frame.scenario {
        Scenario::S2 | Scenario::S3 => {
            let root = (1.0 + asp * asp + 2.0 * asp * ct).sqrt();
            (asp + root) * h.xh + h.yh
        }
        Scenario::S1 | Scenario::S4 => {
            let inv = asp.recip();
            let root = (1.0 + inv * inv + 2.0 * ct * inv).sqrt();
            (1.0 + root) * h.xh + asp * h.yh
        }
    })
}

/// Stretch of the flat slope classes as a function of `r = yh_b / xh_b`, at
/// an explicit frame angle.
pub fn f23_at(shape: &ShapeSpec, r: f64, theta: f64) -> f64 {
    let a = shape.aspect();
    let c = theta.cos();
    let num = a + (1.0 + a * a + 2.0 * a * c.abs()).sqrt() + r;
    num / (1.0 + r * r + 2.0 * r * c).sqrt()
}

/// [`f23_at`] at the obtuse frame angle `pi - t0`, where the maximum lives.
pub fn f23(shape: &ShapeSpec, r: f64) -> f64 {
    f23_at(shape, r, PI - shape.angle())
}

/// Stretch of the steep slope classes as a function of `r`, at an explicit
/// frame angle.
pub fn f14_at(shape: &ShapeSpec, r: f64, theta: f64) -> f64 {
    let a = shape.aspect();
    let c = theta.cos();
    let num = a + (1.0 + a * a + 2.0 * a * c.abs()).sqrt() + a * a * r;
    num / (a * (1.0 + r * r + 2.0 * r * c).sqrt())
}

/// [`f14_at`] at the obtuse frame angle.
pub fn f14(shape: &ShapeSpec, r: f64) -> f64 {
    f14_at(shape, r, PI - shape.angle())
}

/// Both ratio families evaluated at their boundary and stationary candidates,
/// at the obtuse frame angle.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCandidates {
    pub f23_at_zero: f64,
    pub f23_limit: f64,
    pub f23_star: f64,
    pub f23_argmax: f64,
    pub f14_at_zero: f64,
    pub f14_limit: f64,
    pub f14_star: f64,
    pub f14_argmax: f64,
    pub global: f64,
}

/// Evaluates the candidate maxima from their closed forms and asserts the
/// dominance facts the global bound relies on: the flat-family maximum beats
/// the aspect ratio, the steep-family maximum, and both zero-slope values.
pub fn bound_candidates(shape: &ShapeSpec) -> BoundCandidates {
    let a = shape.aspect();
    let theta = PI - shape.angle();
    let (st, c) = theta.sin_cos();
    let ca = c.abs();
    let root = (1.0 + a * a + 2.0 * a * ca).sqrt();

    let f23_argmax = (-c * root - a * c + 1.0) / (root + a - c);
    let f23_star = SQRT_2 * (1.0 + a * a + a * (ca - c) + (a - c) * root).sqrt() / st;
    let f14_argmax = (-c * root + a * a - a * c) / (root - a * a * c + a);
    let f14_star = ((1.0 + a * a).powi(2) + 2.0 * a * (ca - a * a * c) + 2.0 * a * (1.0 - a * c) * root)
        .sqrt()
        / (a * st);

    let out = BoundCandidates {
        f23_at_zero: f23(shape, 0.0),
        f23_limit: 1.0,
        f23_star,
        f23_argmax,
        f14_at_zero: f14(shape, 0.0),
        f14_limit: a,
        f14_star,
        f14_argmax,
        global: 0.0,
    };
    let global = [
        out.f23_at_zero,
        out.f23_limit,
        out.f23_star,
        out.f14_at_zero,
        out.f14_limit,
        out.f14_star,
    ]
    .into_iter()
    .fold(f64::NEG_INFINITY, f64::max);

    let slack = tol::IDENTITY * (1.0 + global.abs());
    assert!(out.f23_star >= a - slack, "flat maximum under the aspect");
    assert!(out.f23_star >= out.f14_star - slack, "steep family wins");
    assert!(out.f23_at_zero >= out.f14_at_zero - slack, "zero-slope order");

    BoundCandidates { global, ..out }
}
