//! Graph construction by brute-force circumsquare enumeration.
//!
//! Everything happens on square-space images: an edge of the graph is
//! certified by an axis-aligned square touching both endpoints with no other
//! point strictly inside. Four far-away sentinel points are appended first so
//! that every face of the resulting structure away from the hull is a
//! triangle; the public graph is the restriction back to the original points.
//!
//! The enumeration is deliberately O(n^4): every triple of the augmented set
//! is tried against every point. Desk-scale inputs finish in seconds and the
//! independent grid oracle keeps the implementation honest.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

use crate::geometry::{GeometryError, Point, ShapeSpec};
use crate::tol;

/// Default multiplier for the sentinel bounding square.
pub const DEFAULT_SENTINEL_MARGIN: f64 = 1e6;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("point set is not in general position:\n{0}")]
    GeneralPosition(GeneralPositionReport),
    #[error("degenerate triple: two points share a {axis} coordinate in square space")]
    DegenerateTriple { axis: char },
    #[error("oracle resolution must be at least 64, got {0}")]
    BadResolution(usize),
    #[error("invalid graph JSON: {0}")]
    InvalidGraph(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Axis-aligned square in square space, stored by SW corner and side length.
///
/// These certify graph edges and triangles: the named points sit on the
/// boundary and no other point lies strictly inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSquare {
    pub corner: Point,
    pub side: f64,
}

impl WitnessSquare {
    /// Signed Chebyshev gap: negative inside (depth below the nearest side),
    /// positive outside, zero on the boundary.
    pub fn signed_gap(&self, q: Point) -> f64 {
        let du = (self.corner.x - q.x).max(q.x - (self.corner.x + self.side));
        let dv = (self.corner.y - q.y).max(q.y - (self.corner.y + self.side));
        du.max(dv)
    }

    pub fn on_boundary(&self, q: Point, tolerance: f64) -> bool {
        self.signed_gap(q).abs() <= tolerance
    }

    pub fn strictly_contains(&self, q: Point, margin: f64) -> bool {
        self.signed_gap(q) < -margin
    }

    /// SW, SE, NE, NW corners in square space.
    pub fn corners(&self) -> [Point; 4] {
        let Point { x: u, y: v } = self.corner;
        let t = self.side;
        [
            Point::new(u, v),
            Point::new(u + t, v),
            Point::new(u + t, v + t),
            Point::new(u, v + t),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct Triangle {
    pub verts: [usize; 3],
    pub witness: WitnessSquare,
}

#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub witness: WitnessSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    SharedU,
    SharedV,
    CocircularSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::SharedU => write!(
                f,
                "points {} and {} share a square-space u coordinate",
                self.indices[0], self.indices[1]
            ),
            ViolationKind::SharedV => write!(
                f,
                "points {} and {} share a square-space v coordinate",
                self.indices[0], self.indices[1]
            ),
            ViolationKind::CocircularSquare => write!(
                f,
                "points {},{},{} have a circumsquare with point {} on its boundary",
                self.indices[0], self.indices[1], self.indices[2], self.indices[3]
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneralPositionReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Graph over the sentinel-augmented point set. Original points come first;
/// the last four entries are the sentinels.
#[derive(Debug, Clone)]
pub struct AugmentedGraph {
    pub shape: ShapeSpec,
    pub points: Vec<Point>,
    pub original_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<Triangle>,
}

/// The empty-homothet graph on the original points, every edge and triangle
/// carrying a certifying square.
#[derive(Debug, Clone)]
pub struct DelaunayGraph {
    pub shape: ShapeSpec,
    pub points: Vec<Point>,
    pub edges: Vec<GraphEdge>,
    pub triangles: Vec<Triangle>,
}

impl DelaunayGraph {
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

/// Flags point pairs sharing a square-space coordinate within 1e-9 and
/// triples whose circumsquare carries a fourth point on its boundary.
pub fn check_general_position(points: &[Point], shape: &ShapeSpec) -> GeneralPositionReport {
    let sq: Vec<Point> = points.iter().map(|&p| shape.to_square_space(p)).collect();
    let n = sq.len();
    let mut found: BTreeSet<Violation> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if (sq[i].x - sq[j].x).abs() <= tol::BOUNDARY {
                found.insert(Violation {
                    kind: ViolationKind::SharedU,
                    indices: vec![i, j],
                });
            }
            if (sq[i].y - sq[j].y).abs() <= tol::BOUNDARY {
                found.insert(Violation {
                    kind: ViolationKind::SharedV,
                    indices: vec![i, j],
                });
            }
        }
    }
    let shares_coord = |p: Point, q: Point| {
        (p.x - q.x).abs() <= tol::BOUNDARY || (p.y - q.y).abs() <= tol::BOUNDARY
    };
    let cocircular: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let sq = &sq;
            (i + 1..n).flat_map(move |j| {
                (j + 1..n).flat_map(move |k| {
                    let mut hits = Vec::new();
                    if shares_coord(sq[i], sq[j])
                        || shares_coord(sq[i], sq[k])
                        || shares_coord(sq[j], sq[k])
                    {
                        return hits;
                    }
                    let squares = circumsquares(sq[i], sq[j], sq[k])
                        .expect("coordinate shares were just excluded");
                    for w in &squares {
                        for (l, &q) in sq.iter().enumerate() {
                            if l == i || l == j || l == k {
                                continue;
                            }
                            if w.on_boundary(q, tol::BOUNDARY) {
                                hits.push(Violation {
                                    kind: ViolationKind::CocircularSquare,
                                    indices: vec![i, j, k, l],
                                });
                            }
                        }
                    }
                    hits
                })
            })
        })
        .collect();
    found.extend(cocircular);
    let violations: Vec<Violation> = found.into_iter().collect();
    GeneralPositionReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Appends four sentinel corners far outside the input cloud.
///
/// In square space they are the corners of the input bounding square (side
/// floored at 1) scaled by `margin` about its center, each nudged outward by
/// a distinct small offset so all eight sentinel coordinates stay pairwise
/// distinct. Mapped back through the shape they are the corners of a huge
/// homothet containing every input point.
pub fn augment_sentinels(points: &[Point], shape: &ShapeSpec, margin: f64) -> Vec<Point> {
    assert!(!points.is_empty(), "need at least one point");
    assert!(margin > 1.0, "margin must exceed 1, got {margin}");
    let sq: Vec<Point> = points.iter().map(|&p| shape.to_square_space(p)).collect();
    let (mut ulo, mut uhi, mut vlo, mut vhi) = (sq[0].x, sq[0].x, sq[0].y, sq[0].y);
    for q in &sq {
        ulo = ulo.min(q.x);
        uhi = uhi.max(q.x);
        vlo = vlo.min(q.y);
        vhi = vhi.max(q.y);
    }
    let extent = (uhi - ulo).max(vhi - vlo).max(1.0);
    let cu = 0.5 * (ulo + uhi);
    let cv = 0.5 * (vlo + vhi);
    let half = 0.5 * margin * extent;
    let nudge = 1e-3 * margin * extent;
    let corners = [
        Point::new(cu - half - nudge, cv - half - 2.0 * nudge),
        Point::new(cu + half + 3.0 * nudge, cv - half - 4.0 * nudge),
        Point::new(cu + half + 5.0 * nudge, cv + half + 6.0 * nudge),
        Point::new(cu - half - 7.0 * nudge, cv + half + 8.0 * nudge),
    ];
    let mut out = points.to_vec();
    out.extend(corners.iter().map(|&c| shape.from_square_space(c)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

const SIDES: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

/// All axis-aligned squares with `a`, `b`, `c` on three distinct sides.
///
/// Each of the 24 side assignments pins one linear equation per point in the
/// unknowns (SW corner, side length); solutions are kept when the side length
/// is positive and every point falls within its assigned side segment
/// (tolerance 1e-9), then deduplicated within 1e-9.
pub fn circumsquares(a: Point, b: Point, c: Point) -> Result<Vec<WitnessSquare>, ConstructionError> {
    let pts = [a, b, c];
    let spread = |get: fn(&Point) -> f64| {
        let vals = pts.map(|p| get(&p));
        vals.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v))
            - vals.iter().fold(f64::INFINITY, |m, v| m.min(*v))
    };
    // Two points may share a coordinate (one of them sits on a corner); all
    // three collapsing onto one grid line cannot span three sides.
    if spread(|p| p.x) <= tol::ORIENTATION {
        return Err(ConstructionError::DegenerateTriple { axis: 'u' });
    }
    if spread(|p| p.y) <= tol::ORIENTATION {
        return Err(ConstructionError::DegenerateTriple { axis: 'v' });
    }
    // Row of the 3x3 system (u0, v0, t) pinned by putting `p` on `side`.
    let row = |p: Point, side: Side| -> ([f64; 3], f64) {
        match side {
            Side::Left => ([1.0, 0.0, 0.0], p.x),
            Side::Right => ([1.0, 0.0, 1.0], p.x),
            Side::Bottom => ([0.0, 1.0, 0.0], p.y),
            Side::Top => ([0.0, 1.0, 1.0], p.y),
        }
    };
    let mut out: Vec<WitnessSquare> = Vec::new();
    for sa in SIDES {
        for sb in SIDES {
            if sb == sa {
                continue;
            }
            for sc in SIDES {
                if sc == sa || sc == sb {
                    continue;
                }
                let assignment = [(a, sa), (b, sb), (c, sc)];
                let rows: Vec<([f64; 3], f64)> =
                    assignment.iter().map(|&(p, s)| row(p, s)).collect();
                let m = nalgebra::Matrix3::from_rows(&[
                    nalgebra::RowVector3::from(rows[0].0),
                    nalgebra::RowVector3::from(rows[1].0),
                    nalgebra::RowVector3::from(rows[2].0),
                ]);
                let rhs = nalgebra::Vector3::new(rows[0].1, rows[1].1, rows[2].1);
                let sol = m
                    .lu()
                    .solve(&rhs)
                    .expect("three distinct sides give an invertible system");
                let (u0, v0, t) = (sol.x, sol.y, sol.z);
                if t <= 0.0 {
                    continue;
                }
                let on_segment = assignment.iter().all(|&(p, s)| match s {
                    Side::Left | Side::Right => {
                        p.y >= v0 - tol::BOUNDARY && p.y <= v0 + t + tol::BOUNDARY
                    }
                    Side::Bottom | Side::Top => {
                        p.x >= u0 - tol::BOUNDARY && p.x <= u0 + t + tol::BOUNDARY
                    }
                });
                if !on_segment {
                    continue;
                }
                let dup = out.iter().any(|w| {
                    (w.corner.x - u0).abs() <= tol::BOUNDARY
                        && (w.corner.y - v0).abs() <= tol::BOUNDARY
                        && (w.side - t).abs() <= tol::BOUNDARY
                });
                if !dup {
                    out.push(WitnessSquare {
                        corner: Point::new(u0, v0),
                        side: t,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Builds the graph over the sentinel-augmented set.
///
/// Every triple of augmented points whose circumsquare list contains a square
/// empty of all other augmented points becomes a triangle (first empty square
/// in enumeration order is kept as witness); edges are the union of triangle
/// edges. The scan parallelizes over the leading index but the output order
/// is the lexicographic triple order regardless of thread schedule.
pub fn build_augmented(
    points: &[Point],
    shape: &ShapeSpec,
    margin: f64,
) -> Result<AugmentedGraph, ConstructionError> {
    if points.len() < 2 {
        return Err(ConstructionError::TooFewPoints {
            min: 2,
            got: points.len(),
        });
    }
    let report = check_general_position(points, shape);
    if !report.ok {
        return Err(ConstructionError::GeneralPosition(report));
    }
    let aug = augment_sentinels(points, shape, margin);
    let sq: Vec<Point> = aug.iter().map(|&p| shape.to_square_space(p)).collect();
    let m = sq.len();
    let triangles: Vec<Triangle> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let sq = &sq;
            (i + 1..m).flat_map(move |j| {
                (j + 1..m).filter_map(move |k| {
                    let squares = circumsquares(sq[i], sq[j], sq[k]).ok()?;
                    let witness = squares.into_iter().find(|w| {
                        !sq.iter().enumerate().any(|(l, &q)| {
                            l != i && l != j && l != k && w.strictly_contains(q, tol::BOUNDARY)
                        })
                    })?;
                    Some(Triangle {
                        verts: [i, j, k],
                        witness,
                    })
                })
            })
        })
        .collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &triangles {
        let [i, j, k] = t.verts;
        edges.insert((i, j));
        edges.insert((i, k));
        edges.insert((j, k));
    }
    Ok(AugmentedGraph {
        shape: shape.clone(),
        points: aug,
        original_count: points.len(),
        edges: edges.into_iter().collect(),
        triangles,
    })
}

impl AugmentedGraph {
    /// Restricts to the original points: edges and triangles whose vertices
    /// are all original, each edge keeping the witness of the first triangle
    /// that produced it.
    pub fn restrict(&self) -> DelaunayGraph {
        let n = self.original_count;
        let originals = self.points[..n].to_vec();
        if n == 2 {
            let qa = self.shape.to_square_space(originals[0]);
            let qb = self.shape.to_square_space(originals[1]);
            return DelaunayGraph {
                shape: self.shape.clone(),
                points: originals,
                edges: vec![GraphEdge {
                    a: 0,
                    b: 1,
                    witness: minimal_square(qa, qb),
                }],
                triangles: Vec::new(),
            };
        }
        let mut edge_witness: BTreeMap<(usize, usize), WitnessSquare> = BTreeMap::new();
        let mut triangles = Vec::new();
        for t in &self.triangles {
            let [i, j, k] = t.verts;
            if k < n {
                triangles.push(t.clone());
            }
            for (x, y) in [(i, j), (i, k), (j, k)] {
                if y < n {
                    edge_witness.entry((x, y)).or_insert(t.witness);
                }
            }
        }
        let edges = edge_witness
            .into_iter()
            .map(|((a, b), witness)| GraphEdge { a, b, witness })
            .collect();
        DelaunayGraph {
            shape: self.shape.clone(),
            points: originals,
            edges,
            triangles,
        }
    }
}

/// Smallest axis-aligned square with both points on its boundary, centered
/// across the narrow axis.
fn minimal_square(qa: Point, qb: Point) -> WitnessSquare {
    let du = (qb.x - qa.x).abs();
    let dv = (qb.y - qa.y).abs();
    let t = du.max(dv);
    let corner = if du >= dv {
        Point::new(qa.x.min(qb.x), 0.5 * (qa.y + qb.y) - 0.5 * t)
    } else {
        Point::new(0.5 * (qa.x + qb.x) - 0.5 * t, qa.y.min(qb.y))
    };
    WitnessSquare { corner, side: t }
}

/// Builds the graph on the original points with the default sentinel margin.
pub fn build_graph(points: &[Point], shape: &ShapeSpec) -> Result<DelaunayGraph, ConstructionError> {
    Ok(build_augmented(points, shape, DEFAULT_SENTINEL_MARGIN)?.restrict())
}

/// Edge set found by rasterizing nearest-site regions.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub edges: BTreeSet<(usize, usize)>,
    pub skipped_cells: usize,
    /// Square-space side length of one grid cell.
    pub cell_size: f64,
}

/// Approximate edge oracle: labels a grid over the padded square-space
/// bounding box by nearest site in the Chebyshev metric and reports site
/// pairs whose regions touch 4-adjacently.
///
/// Resolution-limited by construction; cells whose two nearest sites tie
/// within 1e-12 are skipped and counted.
pub fn grid_voronoi_oracle(
    points: &[Point],
    shape: &ShapeSpec,
    resolution: usize,
) -> Result<OracleResult, ConstructionError> {
    if points.len() < 2 {
        return Err(ConstructionError::TooFewPoints {
            min: 2,
            got: points.len(),
        });
    }
    if resolution < 64 {
        return Err(ConstructionError::BadResolution(resolution));
    }
    let sq: Vec<Point> = points.iter().map(|&p| shape.to_square_space(p)).collect();
    let (mut ulo, mut uhi, mut vlo, mut vhi) = (sq[0].x, sq[0].x, sq[0].y, sq[0].y);
    for q in &sq {
        ulo = ulo.min(q.x);
        uhi = uhi.max(q.x);
        vlo = vlo.min(q.y);
        vhi = vhi.max(q.y);
    }
    let extent = (uhi - ulo).max(vhi - vlo);
    let side = if extent > 0.0 { 2.0 * extent } else { 1.0 };
    let cu = 0.5 * (ulo + uhi);
    let cv = 0.5 * (vlo + vhi);
    let cell = side / resolution as f64;
    let u0 = cu - 0.5 * side;
    let v0 = cv - 0.5 * side;
    const SKIP: u32 = u32::MAX;
    let mut skipped = 0usize;
    let labels: Vec<u32> = (0..resolution * resolution)
        .map(|idx| {
            let ix = idx % resolution;
            let iy = idx / resolution;
            let u = u0 + (ix as f64 + 0.5) * cell;
            let v = v0 + (iy as f64 + 0.5) * cell;
            let mut best = f64::INFINITY;
            let mut second = f64::INFINITY;
            let mut who = SKIP;
            for (s, q) in sq.iter().enumerate() {
                let d = (q.x - u).abs().max((q.y - v).abs());
                if d < best {
                    second = best;
                    best = d;
                    who = s as u32;
                } else if d < second {
                    second = d;
                }
            }
            if second - best <= tol::ORIENTATION {
                skipped += 1;
                SKIP
            } else {
                who
            }
        })
        .collect();
    let mut edges = BTreeSet::new();
    let mut touch = |a: u32, b: u32| {
        if a != b && a != SKIP && b != SKIP {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            edges.insert((lo as usize, hi as usize));
        }
    };
    for iy in 0..resolution {
        for ix in 0..resolution {
            let here = labels[iy * resolution + ix];
            if ix + 1 < resolution {
                touch(here, labels[iy * resolution + ix + 1]);
            }
            if iy + 1 < resolution {
                touch(here, labels[(iy + 1) * resolution + ix]);
            }
        }
    }
    Ok(OracleResult {
        edges,
        skipped_cells: skipped,
        cell_size: cell,
    })
}

/// Pairs of edges whose interiors properly cross (shared endpoints allowed).
pub fn planarity_violations(
    points: &[Point],
    edges: &[(usize, usize)],
) -> Vec<((usize, usize), (usize, usize))> {
    let orient = |p: Point, q: Point, r: Point| -> i32 {
        let v = q - p;
        let w = r - p;
        let cross = v.x * w.y - v.y * w.x;
        let scale = v.norm() * w.norm();
        if cross.abs() <= tol::ORIENTATION * (1.0 + scale) {
            0
        } else if cross > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
            let s1 = orient(pa, pb, pc);
            let s2 = orient(pa, pb, pd);
            let s3 = orient(pc, pd, pa);
            let s4 = orient(pc, pd, pb);
            if s1 * s2 < 0 && s3 * s4 < 0 {
                out.push(((a, b), (c, d)));
            }
        }
    }
    out
}

/// Re-verifies every stored witness against the original points: claimed
/// vertices on the boundary, nobody else strictly inside. Returns complaints.
pub fn witness_violations(graph: &DelaunayGraph) -> Vec<String> {
    let sq: Vec<Point> = graph
        .points
        .iter()
        .map(|&p| graph.shape.to_square_space(p))
        .collect();
    let mut out = Vec::new();
    let mut check = |verts: &[usize], witness: &WitnessSquare, what: String| {
        // Witnesses born from sentinel triangles have sides at the sentinel
        // scale, where the corner solve rounds at scale * epsilon, so the
        // boundary slack has to grow with the square.
        let slack = tol::BOUNDARY + 1e-12 * witness.side;
        for &v in verts {
            if !witness.on_boundary(sq[v], slack) {
                out.push(format!("{what}: point {v} is off the witness boundary"));
            }
        }
        for (l, &q) in sq.iter().enumerate() {
            if !verts.contains(&l) && witness.strictly_contains(q, tol::BOUNDARY) {
                out.push(format!("{what}: point {l} sits inside the witness"));
            }
        }
    };
    for e in &graph.edges {
        check(&[e.a, e.b], &e.witness, format!("edge ({},{})", e.a, e.b));
    }
    for t in &graph.triangles {
        check(
            &t.verts,
            &t.witness,
            format!("triangle {:?}", t.verts),
        );
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct FaceCountReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub boundary_edges: usize,
    /// Euler relation for a connected triangulated disk: t = e - v + 1.
    pub euler_ok: bool,
    /// Every edge borders one or two triangles; exactly four hull edges;
    /// 3t = 2e - hull.
    pub incidence_ok: bool,
}

impl FaceCountReport {
    pub fn ok(&self) -> bool {
        self.euler_ok && self.incidence_ok
    }
}

/// Counts faces of the augmented graph and checks that every bounded face is
/// a triangle, via Euler and edge-incidence bookkeeping. The hull of the
/// augmented set is always the four sentinels.
pub fn face_count_report(aug: &AugmentedGraph) -> FaceCountReport {
    let mut incidence: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &aug.triangles {
        let [i, j, k] = t.verts;
        for pair in [(i, j), (i, k), (j, k)] {
            *incidence.entry(pair).or_insert(0) += 1;
        }
    }
    let v = aug.points.len();
    let e = aug.edges.len();
    let t = aug.triangles.len();
    let boundary = incidence.values().filter(|&&c| c == 1).count();
    let overfull = incidence.values().any(|&c| c > 2);
    let euler_ok = t + v == e + 1;
    let incidence_ok = !overfull && boundary == 4 && 3 * t == 2 * e - boundary;
    FaceCountReport {
        vertices: v,
        edges: e,
        triangles: t,
        boundary_edges: boundary,
        euler_ok,
        incidence_ok,
    }
}

/// Serialization schema for [`DelaunayGraph`]: bare index lists plus a flat
/// witness array holding the edge witnesses first, then the triangle
/// witnesses, in listing order.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub shape: ShapeJson,
    pub points: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub witnesses: Vec<WitnessSquare>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ShapeJson {
    #[serde(rename = "A")]
    pub aspect: f64,
    pub theta0: f64,
}

impl From<&DelaunayGraph> for GraphJson {
    fn from(g: &DelaunayGraph) -> Self {
        let mut witnesses = Vec::with_capacity(g.edges.len() + g.triangles.len());
        witnesses.extend(g.edges.iter().map(|e| e.witness));
        witnesses.extend(g.triangles.iter().map(|t| t.witness));
        GraphJson {
            shape: ShapeJson {
                aspect: g.shape.aspect(),
                theta0: g.shape.angle(),
            },
            points: g.points.iter().map(|&p| p.into()).collect(),
            edges: g.edges.iter().map(|e| [e.a, e.b]).collect(),
            triangles: g.triangles.iter().map(|t| t.verts).collect(),
            witnesses,
        }
    }
}

impl TryFrom<GraphJson> for DelaunayGraph {
    type Error = ConstructionError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let shape = ShapeSpec::new(j.shape.aspect, j.shape.theta0)?;
        if j.witnesses.len() != j.edges.len() + j.triangles.len() {
            return Err(ConstructionError::InvalidGraph(format!(
                "{} witnesses for {} edges and {} triangles",
                j.witnesses.len(),
                j.edges.len(),
                j.triangles.len()
            )));
        }
        let n = j.points.len();
        let points: Vec<Point> = j.points.into_iter().map(Point::from).collect();
        let bounds_ok = j.edges.iter().flatten().all(|&i| i < n)
            && j.triangles.iter().flatten().all(|&i| i < n);
        if !bounds_ok {
            return Err(ConstructionError::InvalidGraph(
                "vertex index out of range".into(),
            ));
        }
        let (edge_w, tri_w) = j.witnesses.split_at(j.edges.len());
        let edges = j
            .edges
            .iter()
            .zip(edge_w)
            .map(|(&[a, b], &witness)| GraphEdge { a, b, witness })
            .collect();
        let triangles = j
            .triangles
            .iter()
            .zip(tri_w)
            .map(|(&verts, &witness)| Triangle { verts, witness })
            .collect();
        Ok(DelaunayGraph {
            shape,
            points,
            edges,
            triangles,
        })
    }
}
