//! The fixed shape, its square-space map, and the per-pair coordinate frames.
//!
//! A shape is a parallelogram with one pair of sides vertical. The long side
//! has length `aspect` (at least 1), the short side has unit length and makes
//! `angle` radians with the long side, with non-negative slope. Scaled
//! translates of the shape are what the graph construction grows around point
//! pairs; a fixed linear map turns them into axis-aligned squares, and a per
//! pair choice of basis turns them into axis-aligned rectangles whose aspect
//! depends only on which of four slope intervals the pair falls in.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

use crate::tol;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("aspect ratio must be finite and at least 1, got {0}")]
    BadAspect(f64),
    #[error("angle must lie in [{0:e}, pi/2] radians, got {1}")]
    BadAngle(f64, f64),
    #[error("cannot classify a coincident point pair")]
    CoincidentPair,
    #[error("point ({0}, {1}) is not on the rectangle boundary")]
    OffBoundary(f64, f64),
    #[error("point ({0}, {1}) is outside the box spanned by the pair")]
    OutsideBox(f64, f64),
}

/// A site in the plane. Serializes as a bare `[x, y]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn vec(self) -> Vector2<f64> {
        Vector2::new(self.x, self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (other - self).norm()
    }
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Point::new(c[0], c[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<Vector2<f64>> for Point {
    fn from(v: Vector2<f64>) -> Self {
        Point::new(v.x, v.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Vector2<f64>;

    fn sub(self, rhs: Point) -> Vector2<f64> {
        self.vec() - rhs.vec()
    }
}

impl std::ops::Add<Vector2<f64>> for Point {
    type Output = Point;

    fn add(self, rhs: Vector2<f64>) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

/// The parallelogram shape, normalized so the short side has length 1.
///
/// `short_vec` is `(sin angle, cos angle)` and `long_vec` is `(0, aspect)`,
/// so the long sides are vertical and the short side never slopes downward.
/// `square_map` is the linear map sending `short_vec` to `(1, 0)` and
/// `long_vec` to `(0, 1)`: images of scaled translates of the shape under it
/// are axis-aligned squares.
#[derive(Debug, Clone)]
pub struct ShapeSpec {
    aspect: f64,
    angle: f64,
    short_vec: Vector2<f64>,
    long_vec: Vector2<f64>,
    square_map: Matrix2<f64>,
    inverse_map: Matrix2<f64>,
}

impl ShapeSpec {
    pub fn new(aspect: f64, angle: f64) -> Result<Self, GeometryError> {
        if !aspect.is_finite() || aspect < 1.0 {
            return Err(GeometryError::BadAspect(aspect));
        }
        if !angle.is_finite() || angle < tol::MIN_ANGLE || angle > FRAC_PI_2 {
            return Err(GeometryError::BadAngle(tol::MIN_ANGLE, angle));
        }
        let (s, c) = angle.sin_cos();
        let short_vec = Vector2::new(s, c);
        let long_vec = Vector2::new(0.0, aspect);
        let square_map = Matrix2::new(aspect, 0.0, -c, s) / (aspect * s);
        // The inverse has the shape vectors as columns, no solve needed.
        let inverse_map = Matrix2::new(s, 0.0, c, aspect);
        Ok(ShapeSpec {
            aspect,
            angle,
            short_vec,
            long_vec,
            square_map,
            inverse_map,
        })
    }

    pub fn aspect(&self) -> f64 {
        self.aspect
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn short_vec(&self) -> Vector2<f64> {
        self.short_vec
    }

    pub fn long_vec(&self) -> Vector2<f64> {
        self.long_vec
    }

    pub fn square_map(&self) -> &Matrix2<f64> {
        &self.square_map
    }

    pub fn inverse_map(&self) -> &Matrix2<f64> {
        &self.inverse_map
    }

    pub fn to_square_space(&self, p: Point) -> Point {
        Point::from(self.square_map * p.vec())
    }

    pub fn from_square_space(&self, q: Point) -> Point {
        Point::from(self.inverse_map * q.vec())
    }
}

/// Slope class of a point pair, read off after orienting the pair west to
/// east (vertical pairs point north and fall in `S4`).
///
/// With `t0` the shape angle and `A` the aspect, the breakpoints between
/// classes are the slopes `(cos t0 - A) / sin t0`, `cos t0 / sin t0` and
/// `(cos t0 + A) / sin t0`; each interval is closed on its upper end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    S1,
    S2,
    S3,
    S4,
}

/// An oblique basis in which homothets of the shape become axis-aligned
/// rectangles with `height = slope_ratio * width`.
///
/// Coordinates in this basis are "hat" coordinates. For a canonically
/// oriented pair both hat coordinates of the east endpoint relative to the
/// west one are non-negative and the pair is "gentle" in the sense of
/// [`gentle_edge`].
#[derive(Debug, Clone, Copy)]
pub struct ScenarioFrame {
    pub scenario: Scenario,
    pub xhat: Vector2<f64>,
    pub yhat: Vector2<f64>,
    /// Angle between the two basis vectors.
    pub theta: f64,
    /// Rectangle height over width; equals the aspect in `S2`/`S3` and its
    /// reciprocal in `S1`/`S4`.
    pub slope_ratio: f64,
    basis_inv: Matrix2<f64>,
}

impl ScenarioFrame {
    pub fn new(shape: &ShapeSpec, scenario: Scenario) -> Self {
        let short = shape.short_vec();
        let a = shape.aspect();
        let t0 = shape.angle();
        let down = Vector2::new(0.0, -1.0);
        let up = Vector2::new(0.0, 1.0);
        let (xhat, yhat, theta, slope_ratio) = match scenario {
            Scenario::S1 => (down, short, PI - t0, a.recip()),
            Scenario::S2 => (short, down, PI - t0, a),
            Scenario::S3 => (short, up, t0, a),
            Scenario::S4 => (up, short, t0, a.recip()),
        };
        let det = xhat.x * yhat.y - xhat.y * yhat.x;
        debug_assert!(det.abs() > 0.0);
        let basis_inv = Matrix2::new(yhat.y, -yhat.x, -xhat.y, xhat.x) / det;
        ScenarioFrame {
            scenario,
            xhat,
            yhat,
            theta,
            slope_ratio,
            basis_inv,
        }
    }

    /// Coordinates of a plane vector in this basis.
    pub fn hat(&self, v: Vector2<f64>) -> HatCoords {
        let s = self.basis_inv * v;
        HatCoords { xh: s.x, yh: s.y }
    }

    /// Plane vector with the given coordinates in this basis.
    pub fn unhat(&self, h: HatCoords) -> Vector2<f64> {
        self.xhat * h.xh + self.yhat * h.yh
    }
}

/// Coordinates in a scenario frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatCoords {
    pub xh: f64,
    pub yh: f64,
}

impl HatCoords {
    pub fn new(xh: f64, yh: f64) -> Self {
        HatCoords { xh, yh }
    }
}

/// Euclidean length of the plane vector with hat coordinates `c`.
///
/// The frame axes meet at `theta`, so the law of cosines gives
/// `sqrt(xh^2 + yh^2 + 2 xh yh cos theta)`.
pub fn hat_norm(frame: &ScenarioFrame, c: HatCoords) -> f64 {
    (c.xh * c.xh + c.yh * c.yh + 2.0 * c.xh * c.yh * frame.theta.cos()).sqrt()
}

/// True when the pair already satisfies the orientation convention: west
/// endpoint first, vertical pairs pointing north.
pub fn is_canonical_pair(a: Point, b: Point) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

/// Orients the pair canonically, picks its slope class, and returns the frame
/// together with the hat coordinates of the east endpoint relative to the
/// west one.
///
/// Both returned coordinates are non-negative with `xh` strictly positive,
/// and `slope_ratio * xh >= yh` up to rounding.
pub fn classify_scenario(
    shape: &ShapeSpec,
    a: Point,
    b: Point,
) -> Result<(ScenarioFrame, HatCoords), GeometryError> {
    if a.x == b.x && a.y == b.y {
        return Err(GeometryError::CoincidentPair);
    }
    let (w, e) = if is_canonical_pair(a, b) { (a, b) } else { (b, a) };
    let scenario = if e.x == w.x {
        Scenario::S4
    } else {
        let slope = (e.y - w.y) / (e.x - w.x);
        let (s, c) = shape.angle().sin_cos();
        let asp = shape.aspect();
        if slope <= (c - asp) / s {
            Scenario::S1
        } else if slope <= c / s {
            Scenario::S2
        } else if slope <= (c + asp) / s {
            Scenario::S3
        } else {
            Scenario::S4
        }
    };
    let frame = ScenarioFrame::new(shape, scenario);
    let mut h = frame.hat(e - w);
    // Pairs sitting exactly on an interval endpoint solve to yh == 0 modulo
    // rounding dust; snap so downstream sign tests stay honest.
    if h.yh < 0.0 && h.yh >= -tol::BOUNDARY * h.xh.max(1.0) {
        h.yh = 0.0;
    }
    debug_assert!(h.xh > 0.0, "east coordinate must be positive: {h:?}");
    debug_assert!(h.yh >= 0.0, "north coordinate must be non-negative: {h:?}");
    debug_assert!(
        frame.slope_ratio * h.xh >= h.yh - tol::BOUNDARY * (1.0 + h.xh),
        "pair steeper than the frame diagonal: {h:?}"
    );
    Ok((frame, h))
}

/// Whether the segment `u v` climbs no faster than the frame diagonal:
/// `|yh_v - yh_u| <= slope_ratio * |xh_v - xh_u|`.
pub fn gentle_edge(frame: &ScenarioFrame, u: HatCoords, v: HatCoords) -> bool {
    (v.yh - u.yh).abs() <= frame.slope_ratio * (v.xh - u.xh).abs()
}

/// Axis-aligned rectangle in a scenario frame.
///
/// Homothets of the shape map to rectangles with `height = slope_ratio *
/// width`; the box spanned by a point pair is the degenerate-aspect cousin.
#[derive(Debug, Clone, Copy)]
pub struct HatRect {
    pub lo: HatCoords,
    pub hi: HatCoords,
}

impl HatRect {
    pub fn from_corners(p: HatCoords, q: HatCoords) -> Self {
        HatRect {
            lo: HatCoords::new(p.xh.min(q.xh), p.yh.min(q.yh)),
            hi: HatCoords::new(p.xh.max(q.xh), p.yh.max(q.yh)),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi.xh - self.lo.xh
    }

    pub fn height(&self) -> f64 {
        self.hi.yh - self.lo.yh
    }

    /// Total boundary length measured in hat units per axis.
    pub fn perimeter(&self) -> f64 {
        2.0 * (self.width() + self.height())
    }

    pub fn contains(&self, p: HatCoords, slack: f64) -> bool {
        p.xh >= self.lo.xh - slack
            && p.xh <= self.hi.xh + slack
            && p.yh >= self.lo.yh - slack
            && p.yh <= self.hi.yh + slack
    }

    pub fn strictly_contains(&self, p: HatCoords, margin: f64) -> bool {
        p.xh > self.lo.xh + margin
            && p.xh < self.hi.xh - margin
            && p.yh > self.lo.yh + margin
            && p.yh < self.hi.yh - margin
    }

    pub fn nw(&self) -> HatCoords {
        HatCoords::new(self.lo.xh, self.hi.yh)
    }

    pub fn ne(&self) -> HatCoords {
        self.hi
    }

    pub fn se(&self) -> HatCoords {
        HatCoords::new(self.hi.xh, self.lo.yh)
    }

    pub fn sw(&self) -> HatCoords {
        self.lo
    }

    /// Clockwise arclength from the NW corner to `p`, hat units per axis.
    ///
    /// Errors unless `p` is on the boundary within a slack of `1e-9` plus a
    /// relative term so that giant rectangles from far-out sentinel corners
    /// do not trip the check on accumulated rounding.
    fn boundary_offset(&self, p: HatCoords) -> Result<f64, GeometryError> {
        let w = self.width();
        let h = self.height();
        let slack = tol::BOUNDARY + 1e-12 * self.perimeter();
        let cx = p.xh.clamp(self.lo.xh, self.hi.xh);
        let cy = p.yh.clamp(self.lo.yh, self.hi.yh);
        // Distance to each side segment, paired with the clockwise offset of
        // the projection onto it. Sides run NW -> NE -> SE -> SW.
        let candidates = [
            ((p.xh - cx).hypot(p.yh - self.hi.yh), cx - self.lo.xh),
            ((p.xh - self.hi.xh).hypot(p.yh - cy), w + (self.hi.yh - cy)),
            ((p.xh - cx).hypot(p.yh - self.lo.yh), w + h + (self.hi.xh - cx)),
            ((p.xh - self.lo.xh).hypot(p.yh - cy), w + h + w + (cy - self.lo.yh)),
        ];
        let (dist, offset) = candidates
            .iter()
            .copied()
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .unwrap();
        if dist > slack {
            return Err(GeometryError::OffBoundary(p.xh, p.yh));
        }
        Ok(offset)
    }
}

/// Clockwise travel distance along the rectangle boundary from `from` to
/// `to`, in hat units per axis. Both points must lie on the boundary.
pub fn clockwise_perimeter_distance(
    rect: &HatRect,
    from: HatCoords,
    to: HatCoords,
) -> Result<f64, GeometryError> {
    let perimeter = rect.perimeter();
    if perimeter <= 0.0 {
        return Ok(0.0);
    }
    let s = rect.boundary_offset(from)?;
    let t = rect.boundary_offset(to)?;
    Ok((t - s).rem_euclid(perimeter))
}

/// Which of three bands a point of the box spanned by a canonical pair falls
/// in, split by lines of slope `aspect` (in hat coordinates) through the two
/// endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    A,
    B,
    C,
}

/// Classifies `p` against the pair `(a, b)`, all in hat coordinates of
/// `frame` with `a` southwest of `b`.
///
/// In `S2`/`S3` the three bands are disjoint. In `S1`/`S4` the two closed
/// conditions can hold simultaneously, so they are tested in a fixed order
/// (`A` first, then `C`) to keep the answer deterministic.
pub fn region_partition(
    frame: &ScenarioFrame,
    a: HatCoords,
    b: HatCoords,
    p: HatCoords,
) -> Result<Region, GeometryError> {
    let rect = HatRect::from_corners(a, b);
    if !rect.contains(p, tol::BOUNDARY) {
        return Err(GeometryError::OutsideBox(p.xh, p.yh));
    }
    let asp = match frame.scenario {
        Scenario::S2 | Scenario::S3 => frame.slope_ratio,
        Scenario::S1 | Scenario::S4 => frame.slope_ratio.recip(),
    };
    let region = match frame.scenario {
        Scenario::S2 | Scenario::S3 => {
            if asp * (p.xh - a.xh) < p.yh - a.yh {
                Region::A
            } else if asp * (b.xh - p.xh) < b.yh - p.yh {
                Region::C
            } else {
                Region::B
            }
        }
        Scenario::S1 | Scenario::S4 => {
            if asp * (b.xh - p.xh) >= b.yh - p.yh {
                Region::A
            } else if asp * (p.xh - a.xh) >= p.yh - a.yh {
                Region::C
            } else {
                Region::B
            }
        }
    };
    Ok(region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn shape(a: f64, t0: f64) -> ShapeSpec {
        ShapeSpec::new(a, t0).unwrap()
    }

    #[test]
    fn shape_rejects_bad_parameters() {
        assert!(ShapeSpec::new(0.5, 1.0).is_err());
        assert!(ShapeSpec::new(f64::NAN, 1.0).is_err());
        assert!(ShapeSpec::new(f64::INFINITY, 1.0).is_err());
        assert!(ShapeSpec::new(2.0, 0.0).is_err());
        assert!(ShapeSpec::new(2.0, -0.3).is_err());
        assert!(ShapeSpec::new(2.0, FRAC_PI_2 + 0.01).is_err());
        assert!(ShapeSpec::new(2.0, f64::NAN).is_err());
        assert!(ShapeSpec::new(1.0, FRAC_PI_2).is_ok());
        assert!(ShapeSpec::new(1e6, tol::MIN_ANGLE).is_ok());
    }

    #[test]
    fn square_map_sends_shape_vectors_to_axes() {
        for (a, t0) in [(1.0, FRAC_PI_2), (2.0, PI / 3.0), (8.0, 0.3), (1.25, 1.0)] {
            let sh = shape(a, t0);
            let su = sh.square_map() * sh.short_vec();
            let lu = sh.square_map() * sh.long_vec();
            assert_relative_eq!(su.x, 1.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(su.y, 0.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(lu.x, 0.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(lu.y, 1.0, epsilon = tol::IDENTITY);
            let id = sh.square_map() * sh.inverse_map();
            assert_relative_eq!(id.m11, 1.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(id.m12, 0.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(id.m21, 0.0, epsilon = tol::IDENTITY);
            assert_relative_eq!(id.m22, 1.0, epsilon = tol::IDENTITY);
        }
    }

    #[test]
    fn frame_table_matches_shape_vectors() {
        let sh = shape(2.0, PI / 3.0);
        let short = sh.short_vec();
        let t0 = sh.angle();

        let f1 = ScenarioFrame::new(&sh, Scenario::S1);
        assert_eq!(f1.xhat, Vector2::new(0.0, -1.0));
        assert_eq!(f1.yhat, short);
        assert_eq!(f1.theta, PI - t0);
        assert_eq!(f1.slope_ratio, 0.5);

        let f2 = ScenarioFrame::new(&sh, Scenario::S2);
        assert_eq!(f2.xhat, short);
        assert_eq!(f2.yhat, Vector2::new(0.0, -1.0));
        assert_eq!(f2.theta, PI - t0);
        assert_eq!(f2.slope_ratio, 2.0);

        let f3 = ScenarioFrame::new(&sh, Scenario::S3);
        assert_eq!(f3.xhat, short);
        assert_eq!(f3.yhat, Vector2::new(0.0, 1.0));
        assert_eq!(f3.theta, t0);
        assert_eq!(f3.slope_ratio, 2.0);

        let f4 = ScenarioFrame::new(&sh, Scenario::S4);
        assert_eq!(f4.xhat, Vector2::new(0.0, 1.0));
        assert_eq!(f4.yhat, short);
        assert_eq!(f4.theta, t0);
        assert_eq!(f4.slope_ratio, 0.5);

        // S1/S3 bases are right-handed, S2/S4 left-handed.
        for (f, sign) in [(f1, 1.0), (f2, -1.0), (f3, 1.0), (f4, -1.0)] {
            let det = f.xhat.x * f.yhat.y - f.xhat.y * f.yhat.x;
            assert_relative_eq!(det, sign * t0.sin(), epsilon = tol::IDENTITY);
        }
    }

    #[test]
    fn classify_slope_zero_square_is_s2() {
        let sh = shape(1.0, FRAC_PI_2);
        let (frame, h) =
            classify_scenario(&sh, Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        assert_eq!(frame.scenario, Scenario::S2);
        assert_relative_eq!(h.xh, 1.0, epsilon = tol::IDENTITY);
        assert_relative_eq!(h.yh, 0.0, epsilon = tol::IDENTITY);
    }

    #[test]
    fn classify_vertical_is_s4() {
        let sh = shape(2.0, PI / 3.0);
        let (frame, h) =
            classify_scenario(&sh, Point::new(0.0, 0.0), Point::new(0.0, 5.0)).unwrap();
        assert_eq!(frame.scenario, Scenario::S4);
        assert_relative_eq!(h.xh, 5.0, epsilon = tol::IDENTITY);
        assert_eq!(h.yh, 0.0);
    }

    #[test]
    fn classify_steep_descent_is_s1() {
        let sh = shape(2.0, FRAC_PI_2);
        let (frame, _) =
            classify_scenario(&sh, Point::new(0.0, 0.0), Point::new(1.0, -5.0)).unwrap();
        assert_eq!(frame.scenario, Scenario::S1);
    }

    #[test]
    fn classify_is_symmetric_in_the_pair() {
        let sh = shape(2.0, 1.0);
        let a = Point::new(0.3, -0.7);
        let b = Point::new(-1.1, 2.4);
        let (fa, ha) = classify_scenario(&sh, a, b).unwrap();
        let (fb, hb) = classify_scenario(&sh, b, a).unwrap();
        assert_eq!(fa.scenario, fb.scenario);
        assert_eq!(ha, hb);
    }

    #[test]
    fn classify_rejects_coincident_pair() {
        let sh = shape(1.0, FRAC_PI_2);
        let p = Point::new(0.25, -3.0);
        assert!(matches!(
            classify_scenario(&sh, p, p),
            Err(GeometryError::CoincidentPair)
        ));
    }

    #[test]
    fn slope_intervals_are_closed_above() {
        // Rectangle of aspect 2: breakpoints at slopes -2, 0, 2.
        let sh = shape(2.0, FRAC_PI_2);
        let cases = [
            (-2.0, Scenario::S1),
            (-1.9, Scenario::S2),
            (0.0, Scenario::S2),
            (0.1, Scenario::S3),
            (2.0, Scenario::S3),
            (2.1, Scenario::S4),
        ];
        for (slope, expect) in cases {
            let (frame, _) =
                classify_scenario(&sh, Point::new(0.0, 0.0), Point::new(1.0, slope)).unwrap();
            assert_eq!(frame.scenario, expect, "slope {slope}");
        }
    }

    #[test]
    fn hat_round_trips_through_the_frame() {
        let sh = shape(3.0, 0.9);
        for scenario in [Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4] {
            let frame = ScenarioFrame::new(&sh, scenario);
            for v in [
                Vector2::new(1.0, 0.0),
                Vector2::new(-0.4, 2.5),
                Vector2::new(17.0, -3.25),
            ] {
                let back = frame.unhat(frame.hat(v));
                assert_relative_eq!(back.x, v.x, epsilon = tol::IDENTITY, max_relative = tol::IDENTITY);
                assert_relative_eq!(back.y, v.y, epsilon = tol::IDENTITY, max_relative = tol::IDENTITY);
            }
        }
    }

    #[test]
    fn hat_norm_is_plane_length() {
        let sh = shape(2.0, PI / 3.0);
        for scenario in [Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4] {
            let frame = ScenarioFrame::new(&sh, scenario);
            for h in [
                HatCoords::new(3.0, 4.0),
                HatCoords::new(1.0, 0.0),
                HatCoords::new(0.7, 2.3),
            ] {
                let plane = frame.unhat(h).norm();
                assert_relative_eq!(hat_norm(&frame, h), plane, max_relative = tol::IDENTITY);
            }
        }
        // Right-angle frame: the formula collapses to Pythagoras.
        let square = shape(1.0, FRAC_PI_2);
        let f2 = ScenarioFrame::new(&square, Scenario::S2);
        assert_relative_eq!(
            hat_norm(&f2, HatCoords::new(3.0, 4.0)),
            5.0,
            epsilon = tol::IDENTITY
        );
    }

    #[test]
    fn gentle_edge_compares_against_the_diagonal() {
        let sh = shape(1.0, FRAC_PI_2);
        let frame = ScenarioFrame::new(&sh, Scenario::S2);
        let o = HatCoords::new(0.0, 0.0);
        assert!(gentle_edge(&frame, o, HatCoords::new(1.0, 0.5)));
        assert!(!gentle_edge(&frame, o, HatCoords::new(0.2, 0.9)));
        assert!(gentle_edge(&frame, o, HatCoords::new(1.0, 1.0)));
        assert!(gentle_edge(&frame, HatCoords::new(1.0, 1.0), o));
    }

    #[test]
    fn clockwise_distance_on_the_unit_square() {
        let rect = HatRect::from_corners(HatCoords::new(0.0, 0.0), HatCoords::new(1.0, 1.0));
        let nw = HatCoords::new(0.0, 1.0);
        let sw = HatCoords::new(0.0, 0.0);
        let ne = HatCoords::new(1.0, 1.0);
        let se = HatCoords::new(1.0, 0.0);
        assert_relative_eq!(clockwise_perimeter_distance(&rect, nw, sw).unwrap(), 3.0);
        assert_relative_eq!(clockwise_perimeter_distance(&rect, nw, se).unwrap(), 2.0);
        assert_relative_eq!(clockwise_perimeter_distance(&rect, sw, ne).unwrap(), 2.0);
        assert_relative_eq!(clockwise_perimeter_distance(&rect, se, se).unwrap(), 0.0);
        let mid_north = HatCoords::new(0.25, 1.0);
        assert_relative_eq!(
            clockwise_perimeter_distance(&rect, mid_north, nw).unwrap(),
            3.75
        );
    }

    #[test]
    fn clockwise_distance_tracks_the_rect_aspect() {
        // Width 2, height 1: NW -> SE along the top and east sides.
        let rect = HatRect::from_corners(HatCoords::new(0.0, 0.0), HatCoords::new(2.0, 1.0));
        let d = clockwise_perimeter_distance(
            &rect,
            HatCoords::new(0.0, 1.0),
            HatCoords::new(2.0, 0.0),
        )
        .unwrap();
        assert_relative_eq!(d, 3.0);
    }

    #[test]
    fn clockwise_distance_rejects_interior_points() {
        let rect = HatRect::from_corners(HatCoords::new(0.0, 0.0), HatCoords::new(1.0, 1.0));
        let err = clockwise_perimeter_distance(
            &rect,
            HatCoords::new(0.5, 0.5),
            HatCoords::new(0.0, 0.0),
        );
        assert!(matches!(err, Err(GeometryError::OffBoundary(_, _))));
    }

    #[test]
    fn region_diagonal_and_flat_pairs_land_in_b() {
        let sh = shape(2.0, PI / 3.0);
        let frame = ScenarioFrame::new(&sh, Scenario::S3);
        let a = HatCoords::new(0.0, 0.0);
        let b = HatCoords::new(3.0, 2.0);
        // On the slope-2 line through a: both band tests sit at equality.
        let p = HatCoords::new(0.5, 1.0);
        assert_eq!(region_partition(&frame, a, b, p).unwrap(), Region::B);

        let flat_b = HatCoords::new(2.0, 0.0);
        let mid = HatCoords::new(1.0, 0.0);
        assert_eq!(region_partition(&frame, a, flat_b, mid).unwrap(), Region::B);
    }

    #[test]
    fn region_bands_split_a_steep_scenario_pair() {
        let sh = shape(2.0, FRAC_PI_2);
        let frame = ScenarioFrame::new(&sh, Scenario::S1);
        let a = HatCoords::new(0.0, 0.0);
        let b = HatCoords::new(1.0, 0.3);
        // Middling points satisfy both closed conditions; A wins by order.
        let p = HatCoords::new(0.5, 0.15);
        assert_eq!(region_partition(&frame, a, b, p).unwrap(), Region::A);
        // Steep relative to b, shallow relative to a.
        let q = HatCoords::new(0.95, 0.0);
        assert_eq!(region_partition(&frame, a, b, q).unwrap(), Region::C);
    }

    #[test]
    fn region_rejects_points_outside_the_box() {
        let sh = shape(2.0, FRAC_PI_2);
        let frame = ScenarioFrame::new(&sh, Scenario::S2);
        let a = HatCoords::new(0.0, 0.0);
        let b = HatCoords::new(1.0, 1.0);
        assert!(region_partition(&frame, a, b, HatCoords::new(2.0, 0.5)).is_err());
    }
}
