//! Instrumented checks of the path-length inequalities behind the spanning
//! bound.
//!
//! The bound rests on a handful of claims about the triangles a segment `ab`
//! crosses when `ab` is not itself an edge. This module extracts that crossing
//! structure ([`CrossingSequence`]) from an augmented graph and evaluates each
//! claim numerically on concrete instances, emitting one [`LemmaRow`] per
//! checked inequality. A row that fails means either the implementation or the
//! argument has a gap, so campaigns over random instances double as a
//! regression net for the whole construction pipeline.
//!
//! All coordinates here are hat coordinates of the scenario frame of the pair,
//! taken relative to `a`. Rows mix graph distances (Euclidean units) with hat
//! coordinates; the inequalities are stated that way on purpose, since the two
//! unit systems only differ by bounded factors that the final bound absorbs.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{shortest_path_table, DistanceTable};
use crate::construction::{build_augmented, AugmentedGraph, ConstructionError, WitnessSquare};
use crate::geometry::{
    classify_scenario, clockwise_perimeter_distance, gentle_edge, hat_norm, is_canonical_pair,
    GeometryError, HatCoords, HatRect, Point, ScenarioFrame, ShapeSpec,
};
use crate::tol;

/// Sentinel margin used by verification campaigns.
///
/// The default construction margin of 1e6 puts sentinel-adjacent witness
/// rectangles at magnitudes where perimeter arithmetic loses more than the
/// 1e-9 slack the rows allow, so campaigns run with a smaller cushion. The
/// sentinels still dominate every pairwise distance by orders of magnitude.
pub const VERIFY_MARGIN: f64 = 1e4;

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("({0}, {1}) is already a graph edge")]
    AlreadyEdge(usize, usize),
    #[error("vertex {0} lies within 1e-12 of the open segment ab")]
    VertexNearSegment(usize),
    #[error("indices ({0}, {1}) must name distinct original points")]
    NotOriginal(usize, usize),
    #[error("face walk failed: {0}")]
    WalkFailed(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A chain vertex: graph index plus its hat coordinates relative to `a`.
#[derive(Debug, Clone, Copy)]
pub struct SeqPoint {
    pub index: usize,
    pub hat: HatCoords,
}

/// The triangles of the augmented graph crossed by the open segment `ab`,
/// together with the high and low chains along the corridor.
///
/// With `k` crossed triangles, `highs` and `lows` have length `k + 1`: entry 0
/// is `a`, entry `k` is `b`, and entry `i` for `0 < i < k` is the endpoint of
/// the edge shared by triangles `i - 1` and `i` (zero-based) lying above
/// respectively below the line `ab`. `witnesses[i]` is the witness square of
/// triangle `i` as an axis-aligned rectangle in hat coordinates, and
/// `east_coords[i]` is the hat x coordinate of that rectangle's east side.
#[derive(Debug, Clone)]
pub struct CrossingSequence {
    pub frame: ScenarioFrame,
    pub a: usize,
    pub b: usize,
    pub b_hat: HatCoords,
    pub triangles: Vec<[usize; 3]>,
    pub highs: Vec<SeqPoint>,
    pub lows: Vec<SeqPoint>,
    pub witnesses: Vec<HatRect>,
    pub east_coords: Vec<f64>,
}

impl CrossingSequence {
    pub fn k(&self) -> usize {
        self.triangles.len()
    }
}

fn witness_rect(
    shape: &ShapeSpec,
    frame: &ScenarioFrame,
    origin: Point,
    witness: &WitnessSquare,
) -> HatRect {
    let corners = witness.corners();
    let hats: Vec<HatCoords> = corners
        .iter()
        .map(|&c| frame.hat(shape.from_square_space(c) - origin))
        .collect();
    let rect = HatRect::from_corners(
        HatCoords::new(
            hats.iter().map(|h| h.xh).fold(f64::INFINITY, f64::min),
            hats.iter().map(|h| h.yh).fold(f64::INFINITY, f64::min),
        ),
        HatCoords::new(
            hats.iter().map(|h| h.xh).fold(f64::NEG_INFINITY, f64::max),
            hats.iter().map(|h| h.yh).fold(f64::NEG_INFINITY, f64::max),
        ),
    );
    debug_assert!(
        {
            let scale = 1.0 + rect.perimeter();
            let expect = frame.slope_ratio * rect.width();
            (rect.height() - expect).abs() <= 1e-9 * scale
        },
        "homothet image is not a frame-aspect rectangle"
    );
    rect
}

/// Signed side of `p` relative to the directed line from the origin through
/// `b`, in the hat plane. Positive means above.
fn line_side(b: HatCoords, p: HatCoords) -> f64 {
    b.xh * p.yh - b.yh * p.xh
}

fn side_of(b: HatCoords, p: HatCoords, index: usize) -> Result<f64, SequenceError> {
    let s = line_side(b, p);
    let scale = 1.0 + b.xh.hypot(b.yh) * p.xh.hypot(p.yh);
    if s.abs() <= tol::ORIENTATION * scale {
        return Err(SequenceError::VertexNearSegment(index));
    }
    Ok(s)
}

/// Parameter along `0 -> b` where the segment `uv` crosses it, defined when
/// the endpoints straddle the line.
fn crossing_param(b: HatCoords, u: HatCoords, v: HatCoords) -> f64 {
    let dx = v.xh - u.xh;
    let dy = v.yh - u.yh;
    (u.xh * dy - u.yh * dx) / (b.xh * dy - b.yh * dx)
}

/// Walks the triangle corridor from `a` to `b` and records the crossing
/// structure. The pair is canonicalized first, so `seq.a`/`seq.b` may be the
/// input indices swapped. Fails fast when the pair is already an edge or when
/// a vertex sits too close to the open segment for side tests to mean
/// anything.
pub fn crossing_sequence(
    aug: &AugmentedGraph,
    a: usize,
    b: usize,
) -> Result<CrossingSequence, SequenceError> {
    if a == b || a >= aug.original_count || b >= aug.original_count {
        return Err(SequenceError::NotOriginal(a, b));
    }
    let (a, b) = if is_canonical_pair(aug.points[a], aug.points[b]) {
        (a, b)
    } else {
        (b, a)
    };
    let key = (a.min(b), a.max(b));
    if aug.edges.binary_search(&key).is_ok() {
        return Err(SequenceError::AlreadyEdge(a, b));
    }

    let pa = aug.points[a];
    let (frame, b_hat) = classify_scenario(&aug.shape, pa, aug.points[b])?;
    let hat_of = |i: usize| frame.hat(aug.points[i] - pa);

    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (t, tri) in aug.triangles.iter().enumerate() {
        let [p, q, r] = tri.verts;
        for (u, v) in [(p, q), (p, r), (q, r)] {
            by_edge.entry((u.min(v), u.max(v))).or_default().push(t);
        }
    }

    // The corridor starts at the triangle around a whose opposite edge
    // straddles the line ab ahead of a.
    let mut start = None;
    for (t, tri) in aug.triangles.iter().enumerate() {
        if !tri.verts.contains(&a) {
            continue;
        }
        let others: Vec<usize> = tri.verts.iter().copied().filter(|&v| v != a).collect();
        let (u, v) = (others[0], others[1]);
        if u == b || v == b {
            continue;
        }
        let (hu, hv) = (hat_of(u), hat_of(v));
        let (su, sv) = (side_of(b_hat, hu, u)?, side_of(b_hat, hv, v)?);
        if su * sv < 0.0 && crossing_param(b_hat, hu, hv) > 0.0 {
            start = Some((t, if su > 0.0 { (u, v) } else { (v, u) }));
            break;
        }
    }
    let (mut cur, (mut hi, mut lo)) =
        start.ok_or_else(|| SequenceError::WalkFailed(format!("no corridor entry at {a}")))?;

    let mut triangles = vec![aug.triangles[cur].verts];
    let mut highs = vec![SeqPoint {
        index: a,
        hat: HatCoords::new(0.0, 0.0),
    }];
    let mut lows = highs.clone();
    let mut witnesses = vec![witness_rect(
        &aug.shape,
        &frame,
        pa,
        &aug.triangles[cur].witness,
    )];

    for _ in 0..aug.triangles.len() {
        let key = (hi.min(lo), hi.max(lo));
        let next = by_edge
            .get(&key)
            .and_then(|ts| ts.iter().copied().find(|&t| t != cur))
            .ok_or_else(|| {
                SequenceError::WalkFailed(format!("no triangle across edge {key:?}"))
            })?;
        let w = aug.triangles[next]
            .verts
            .iter()
            .copied()
            .find(|v| *v != hi && *v != lo)
            .expect("adjacent triangle shares exactly one edge");

        highs.push(SeqPoint {
            index: hi,
            hat: hat_of(hi),
        });
        lows.push(SeqPoint {
            index: lo,
            hat: hat_of(lo),
        });
        triangles.push(aug.triangles[next].verts);
        witnesses.push(witness_rect(
            &aug.shape,
            &frame,
            pa,
            &aug.triangles[next].witness,
        ));

        if w == b {
            highs.push(SeqPoint {
                index: b,
                hat: b_hat,
            });
            lows.push(SeqPoint {
                index: b,
                hat: b_hat,
            });
            let east_coords = witnesses.iter().map(|r| r.hi.xh).collect();
            return Ok(CrossingSequence {
                frame,
                a,
                b,
                b_hat,
                triangles,
                highs,
                lows,
                witnesses,
                east_coords,
            });
        }
        if side_of(b_hat, hat_of(w), w)? > 0.0 {
            hi = w;
        } else {
            lo = w;
        }
        cur = next;
    }
    Err(SequenceError::WalkFailed(format!(
        "corridor from {a} to {b} did not terminate"
    )))
}

/// True when no other augmented point lies strictly inside the axis-aligned
/// hat rectangle spanned by the pair.
pub fn pair_box_empty(aug: &AugmentedGraph, seq: &CrossingSequence) -> bool {
    let rect = HatRect::from_corners(HatCoords::new(0.0, 0.0), seq.b_hat);
    let pa = aug.points[seq.a];
    aug.points.iter().enumerate().all(|(i, &p)| {
        i == seq.a
            || i == seq.b
            || !rect.strictly_contains(seq.frame.hat(p - pa), tol::BOUNDARY)
    })
}

/// Evaluates the charging invariant for the `i`-th crossed rectangle
/// (1-based): reaching both chain vertices from `a` and connecting them along
/// the rectangle's clockwise boundary costs no more than `(2 + 2L)` times the
/// east coordinate. Returns `(holds, lhs, rhs)`.
pub fn has_potential(
    seq: &CrossingSequence,
    table: &DistanceTable,
    i: usize,
) -> Result<(bool, f64, f64), GeometryError> {
    assert!(i >= 1 && i <= seq.k(), "rectangle index {i} out of range");
    let (h, l) = (seq.highs[i], seq.lows[i]);
    let rect = &seq.witnesses[i - 1];
    let boundary = clockwise_perimeter_distance(rect, h.hat, l.hat)?;
    let lhs = table.dist[seq.a][h.index] + table.dist[seq.a][l.index] + boundary;
    let rhs = (2.0 + 2.0 * seq.frame.slope_ratio) * seq.east_coords[i - 1];
    Ok((lhs <= rhs + tol::INEQUALITY, lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSide {
    High,
    Low,
}

/// Position `i` is inductive when the chain edge `(h_i, l_i)` is gentle; the
/// inductive vertex is whichever endpoint reaches further east.
pub fn inductive_info(seq: &CrossingSequence, i: usize) -> (bool, Option<(PathSide, SeqPoint)>) {
    assert!(i >= 1 && i < seq.k(), "chain index {i} out of range");
    let (h, l) = (seq.highs[i], seq.lows[i]);
    if !gentle_edge(&seq.frame, h.hat, l.hat) {
        return (false, None);
    }
    if h.hat.xh > l.hat.xh {
        (true, Some((PathSide::High, h)))
    } else {
        (true, Some((PathSide::Low, l)))
    }
}

fn is_eastern(rect: &HatRect, p: HatCoords) -> bool {
    (p.xh - rect.hi.xh).abs() <= tol::BOUNDARY * (1.0 + rect.hi.xh.abs())
}

/// One evaluated inequality. `holds` is `lhs <= rhs + 1e-9`; rows that encode
/// a strictness claim use `rhs = 0` with the same slack. Preconditions that
/// fail produce a skipped row instead, so reports stay auditable.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub lemma: &'static str,
    pub pair: [usize; 2],
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<&'static str>,
}

impl LemmaRow {
    fn checked(lemma: &'static str, pair: [usize; 2], index: usize, lhs: f64, rhs: f64) -> Self {
        LemmaRow {
            lemma,
            pair,
            index,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(rhs - lhs),
            holds: Some(lhs <= rhs + tol::INEQUALITY),
            skipped: None,
        }
    }

    fn skipped(lemma: &'static str, pair: [usize; 2], index: usize, why: &'static str) -> Self {
        LemmaRow {
            lemma,
            pair,
            index,
            lhs: None,
            rhs: None,
            slack: None,
            holds: None,
            skipped: Some(why),
        }
    }

    pub fn violated(&self) -> bool {
        self.holds == Some(false)
    }
}

/// When the inductive vertex `c` at position `i` sits on the east side of its
/// rectangle and the rectangle has potential, `a` reaches `c` within
/// `(1 + L)` times `c`'s east coordinate.
pub fn check_lemma5(
    seq: &CrossingSequence,
    table: &DistanceTable,
    i: usize,
) -> Result<LemmaRow, GeometryError> {
    let pair = [seq.a, seq.b];
    let (inductive, point) = inductive_info(seq, i);
    if !inductive {
        return Ok(LemmaRow::skipped("eastern.shortcut", pair, i, "not inductive"));
    }
    let (_, c) = point.expect("inductive position carries its vertex");
    if !has_potential(seq, table, i)?.0 {
        return Ok(LemmaRow::skipped("eastern.shortcut", pair, i, "no potential"));
    }
    if !is_eastern(&seq.witnesses[i - 1], c.hat) {
        return Ok(LemmaRow::skipped("eastern.shortcut", pair, i, "not eastern"));
    }
    let lhs = table.dist[seq.a][c.index];
    let rhs = (1.0 + seq.frame.slope_ratio) * c.hat.xh;
    Ok(LemmaRow::checked("eastern.shortcut", pair, i, lhs, rhs))
}

/// Maximal chain runs ending at position `j`: walk backward while the chain
/// vertex is not on the east side of its own rectangle, stopping at `a`.
/// Returns the position ranges for the high and the low chain.
pub fn maximal_paths(seq: &CrossingSequence, j: usize) -> (Vec<usize>, Vec<usize>) {
    assert!(j >= 1 && j <= seq.k(), "chain index {j} out of range");
    let walk = |chain: &[SeqPoint]| {
        let mut i = j;
        while i > 1 && !is_eastern(&seq.witnesses[i - 1], chain[i].hat) {
            i -= 1;
        }
        if i == 1 && !is_eastern(&seq.witnesses[0], chain[1].hat) {
            i = 0;
        }
        (i..=j).collect::<Vec<usize>>()
    };
    (walk(&seq.highs), walk(&seq.lows))
}

fn path_length(seq: &CrossingSequence, chain: &[SeqPoint], positions: &[usize]) -> f64 {
    positions
        .windows(2)
        .filter(|w| chain[w[0]].index != chain[w[1]].index)
        .map(|w| {
            let (p, q) = (chain[w[0]].hat, chain[w[1]].hat);
            hat_norm(&seq.frame, HatCoords::new(q.xh - p.xh, q.yh - p.yh))
        })
        .sum()
}

/// Bounds the Euclidean length of both maximal chain runs ending at `j` by
/// the taxicab displacement of their endpoints in hat coordinates, measuring
/// the high run downhill and the low run uphill.
pub fn check_lemma7(seq: &CrossingSequence, j: usize) -> [LemmaRow; 2] {
    let pair = [seq.a, seq.b];
    let (hp, lp) = maximal_paths(seq, j);
    let (h0, hj) = (seq.highs[hp[0]].hat, seq.highs[j].hat);
    let (l0, lj) = (seq.lows[lp[0]].hat, seq.lows[j].hat);
    let high = LemmaRow::checked(
        "maximal.high",
        pair,
        j,
        path_length(seq, &seq.highs, &hp),
        (hj.xh - h0.xh) + (hj.yh - h0.yh),
    );
    let low = LemmaRow::checked(
        "maximal.low",
        pair,
        j,
        path_length(seq, &seq.lows, &lp),
        (lj.xh - l0.xh) + (l0.yh - lj.yh),
    );
    [high, low]
}

/// The endgame inequality for a pair whose spanned rectangle is empty. The
/// case split follows the first inductive position: none at all bounds
/// `d(a, b)` directly, otherwise the inductive vertex is charged, with
/// coefficients depending on whether the frame runs along the short or the
/// long side of the shape.
pub fn check_crossing_lemma(
    aug: &AugmentedGraph,
    seq: &CrossingSequence,
    table: &DistanceTable,
) -> LemmaRow {
    let pair = [seq.a, seq.b];
    if !pair_box_empty(aug, seq) {
        return LemmaRow::skipped("crossing.none", pair, 0, "pair box not empty");
    }
    let theta = seq.frame.theta;
    let first = (1..seq.k()).find_map(|i| {
        let (inductive, point) = inductive_info(seq, i);
        point.map(|(side, c)| (i, side, c)).filter(|_| inductive)
    });
    let Some((i, side, c)) = first else {
        let el = seq.frame.slope_ratio;
        let coef = el + (1.0 + el * el + 2.0 * el * theta.cos().abs()).sqrt();
        let lhs = table.dist[seq.a][seq.b];
        let rhs = coef * seq.b_hat.xh + seq.b_hat.yh;
        return LemmaRow::checked("crossing.none", pair, seq.k(), lhs, rhs);
    };
    let aspect = aug.shape.aspect();
    let d_ac = table.dist[seq.a][c.index];
    let flat = (seq.frame.slope_ratio - aspect).abs() < 1e-12;
    let (lemma, lhs, coef) = match (flat, side) {
        (true, PathSide::High) => (
            "crossing.flat_high",
            d_ac + (c.hat.yh - seq.b_hat.yh),
            aspect + (1.0 + aspect * aspect + 2.0 * aspect * theta.cos().abs()).sqrt(),
        ),
        (true, PathSide::Low) => (
            "crossing.flat_low",
            d_ac - c.hat.yh,
            aspect + (1.0 + aspect * aspect + 2.0 * aspect * theta.cos().abs()).sqrt(),
        ),
        (false, PathSide::High) => (
            "crossing.steep_high",
            d_ac + aspect * (c.hat.yh - seq.b_hat.yh),
            1.0 + (1.0 + (1.0 + 2.0 * aspect * theta.cos().abs()) / (aspect * aspect)).sqrt(),
        ),
        (false, PathSide::Low) => (
            "crossing.steep_low",
            d_ac - aspect * c.hat.yh,
            1.0 + (1.0 + (1.0 + 2.0 * aspect * theta.cos().abs()) / (aspect * aspect)).sqrt(),
        ),
    };
    LemmaRow::checked(lemma, pair, i, lhs, coef * c.hat.xh)
}

/// Monotonicity of the chain between an inductive vertex that overshoots `b`
/// vertically and the first later chain vertex that does not: every edge in
/// between moves strictly east and strictly back toward `b`'s level.
pub fn check_lemma9(seq: &CrossingSequence, i: usize) -> Vec<LemmaRow> {
    let pair = [seq.a, seq.b];
    let el = seq.frame.slope_ratio;
    let b = seq.b_hat;
    // The monotonicity claim is stated for interior positions only.
    if i < 2 {
        return vec![LemmaRow::skipped("chain.monotone", pair, i, "first position")];
    }
    let (inductive, point) = inductive_info(seq, i);
    let Some((side, c)) = point.filter(|_| inductive) else {
        return vec![LemmaRow::skipped("chain.monotone", pair, i, "not inductive")];
    };
    let overshoot = el * (b.xh - c.hat.xh);
    let (chain, vertical, rows_east, rows_vert): (&[SeqPoint], _, _, _) = match side {
        PathSide::High => {
            if !(overshoot > 0.0 && overshoot < c.hat.yh - b.yh) {
                return vec![LemmaRow::skipped("chain.monotone", pair, i, "no overshoot")];
            }
            (
                &seq.highs,
                1.0,
                "highpath.east",
                "highpath.down",
            )
        }
        PathSide::Low => {
            if !(overshoot > 0.0 && overshoot < b.yh - c.hat.yh) {
                return vec![LemmaRow::skipped("chain.monotone", pair, i, "no overshoot")];
            }
            (&seq.lows, -1.0, "lowpath.east", "lowpath.up")
        }
    };
    let level = |p: HatCoords| vertical * (p.yh - b.yh);
    let j = (i + 1..=seq.k())
        .find(|&j| {
            let p = chain[j].hat;
            level(p) >= 0.0 && el * (b.xh - p.xh) >= level(p)
        })
        .expect("chain ends at b, which trivially qualifies");
    let mut rows = Vec::new();
    for w in (i..=j).collect::<Vec<usize>>().windows(2) {
        let (p, q) = (chain[w[0]], chain[w[1]]);
        if p.index == q.index {
            continue;
        }
        rows.push(LemmaRow::checked(
            rows_east,
            pair,
            w[1],
            p.hat.xh - q.hat.xh,
            0.0,
        ));
        rows.push(LemmaRow::checked(
            rows_vert,
            pair,
            w[1],
            vertical * (q.hat.yh - p.hat.yh),
            0.0,
        ));
    }
    rows
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("pair ({a}, {b}): {source}")]
    Sequence {
        a: usize,
        b: usize,
        source: SequenceError,
    },
}

/// All rows from one instance, tagged so campaign output can be concatenated.
#[derive(Debug, Serialize)]
pub struct LemmaReport {
    pub instance: String,
    pub rows: Vec<LemmaRow>,
}

#[derive(Serialize)]
struct RowLine<'a> {
    instance: &'a str,
    #[serde(flatten)]
    row: &'a LemmaRow,
}

impl LemmaReport {
    pub fn violations(&self) -> Vec<&LemmaRow> {
        self.rows.iter().filter(|r| r.violated()).collect()
    }

    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| !r.violated())
    }

    /// One JSON object per row, floats at full precision, stable ordering.
    pub fn write_json_lines<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        for row in &self.rows {
            crate::io::write_json_line(
                &mut writer,
                &RowLine {
                    instance: &self.instance,
                    row,
                },
            )?;
        }
        Ok(())
    }
}

/// Runs every check on every eligible pair of one instance.
///
/// Eligible pairs are non-edges of the graph built with [`VERIFY_MARGIN`]
/// whose spanned hat rectangle contains no other point; pairs with a vertex
/// too close to the segment are recorded as skipped rows rather than
/// silently dropped. Rows come back sorted by `(pair, lemma, index)`.
pub fn verify_instance(
    points: &[Point],
    shape: &ShapeSpec,
    instance: impl Into<String>,
) -> Result<LemmaReport, VerifyError> {
    let aug = build_augmented(points, shape, VERIFY_MARGIN)?;
    let table = shortest_path_table(&aug.points, &aug.edges);
    let mut rows = Vec::new();

    for a in 0..aug.original_count {
        for b in a + 1..aug.original_count {
            let seq = match crossing_sequence(&aug, a, b) {
                Ok(seq) => seq,
                Err(SequenceError::AlreadyEdge(..)) => continue,
                Err(SequenceError::VertexNearSegment(v)) => {
                    rows.push(LemmaRow::skipped(
                        "sequence",
                        [a, b],
                        v,
                        "vertex near segment",
                    ));
                    continue;
                }
                Err(source) => return Err(VerifyError::Sequence { a, b, source }),
            };
            if !pair_box_empty(&aug, &seq) {
                continue;
            }
            let pair = [seq.a, seq.b];
            let numeric = |source: GeometryError| VerifyError::Sequence {
                a: pair[0],
                b: pair[1],
                source: source.into(),
            };

            let (_, lhs, rhs) = has_potential(&seq, &table, 1).map_err(numeric)?;
            rows.push(LemmaRow::checked("potential.base", pair, 1, lhs, rhs));
            for i in 1..seq.k() {
                let (held, ..) = has_potential(&seq, &table, i).map_err(numeric)?;
                if held && !inductive_info(&seq, i).0 {
                    let (_, lhs, rhs) = has_potential(&seq, &table, i + 1).map_err(numeric)?;
                    rows.push(LemmaRow::checked("potential.step", pair, i + 1, lhs, rhs));
                }
            }
            for i in 1..seq.k() {
                rows.push(check_lemma5(&seq, &table, i).map_err(numeric)?);
            }
            for j in 1..=seq.k() {
                rows.extend(check_lemma7(&seq, j));
            }
            rows.push(check_crossing_lemma(&aug, &seq, &table));
            for i in 1..seq.k() {
                rows.extend(check_lemma9(&seq, i));
            }
        }
    }

    rows.sort_by(|x, y| {
        (x.pair, x.lemma, x.index).cmp(&(y.pair, y.lemma, y.index))
    });
    Ok(LemmaReport {
        instance: instance.into(),
        rows,
    })
}
