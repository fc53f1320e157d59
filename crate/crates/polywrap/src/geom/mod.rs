//! Exact planar geometry: integer points, orientation and containment
//! predicates, convex hulls, transient rational points, visibility along a
//! wrap, and the elastic-band chain used by twangs.
//!
//! All persistent geometry lives on integer input points with coordinates
//! bounded by [`Point::MAX_COORD`], so every predicate here is the exact sign
//! of an integer determinant. Rational coordinates appear only transiently,
//! for stretch targets on the interior of an edge.

mod hull;
mod rational;
mod spchain;
pub(crate) mod visibility;

pub use hull::{convex_hull, convex_hull_of_points, in_convex_region, ConvexHull};
pub use rational::{
    orient_rat, point_in_rat_triangle, rat, rat_from_i64, rat_in_triangle, rat_on_segment, Rat,
    RationalPoint,
};
pub use spchain::{capture_chain, sp_chain, sp_chain_points};
pub use visibility::{clearly_sees, visible_intervals, Interval, Rat128};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate triangle: corners are collinear")]
    DegenerateTriangle,
    #[error("twang precondition violated: {0}")]
    TwangPreconditionViolated(String),
    #[error("sp chain crosses the wrap boundary: {0}")]
    NonSimpleResult(String),
    #[error("coordinate out of range: |{0}| > 2^20")]
    CoordinateOutOfRange(i64),
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
}

/// A planar point with exact integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    /// Coordinate bound guaranteeing that every determinant computed here
    /// fits comfortably in 128-bit intermediates.
    pub const MAX_COORD: i64 = 1 << 20;

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= Self::MAX_COORD && self.y.abs() <= Self::MAX_COORD
    }

    /// Squared Euclidean distance to `other`.
    pub fn dist2(&self, other: &Point) -> i64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.dist2(other) as f64).sqrt()
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Orientation of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Sign of the exact 2x2 determinant of (q - p, r - p).
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r) {
        0 => Orientation::Collinear,
        d if d > 0 => Orientation::Ccw,
        _ => Orientation::Cw,
    }
}

/// The determinant itself; callers that need magnitudes use this directly.
pub fn cross(p: Point, q: Point, r: Point) -> i64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

/// Classification of a point against a closed triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrianglePlacement {
    Interior,
    Boundary,
    Outside,
}

/// Exact point-in-triangle test via three orientation signs.
pub fn point_in_triangle(
    p: Point,
    a: Point,
    b: Point,
    c: Point,
) -> Result<TrianglePlacement, GeomError> {
    if orient(a, b, c) == Orientation::Collinear {
        return Err(GeomError::DegenerateTriangle);
    }
    let s1 = cross(a, b, p).signum();
    let s2 = cross(b, c, p).signum();
    let s3 = cross(c, a, p).signum();
    if (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0) {
        Ok(TrianglePlacement::Interior)
    } else if (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0) {
        Ok(TrianglePlacement::Boundary)
    } else {
        Ok(TrianglePlacement::Outside)
    }
}

/// True iff `p` lies strictly inside the open segment (a, b).
pub fn strictly_inside_segment(p: Point, a: Point, b: Point) -> bool {
    if p == a || p == b {
        return false;
    }
    if orient(a, b, p) != Orientation::Collinear {
        return false;
    }
    let dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    dot > 0 && dot < a.dist2(&b)
}

/// True iff `p` lies on the closed segment [a, b].
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    p == a || p == b || strictly_inside_segment(p, a, b)
}

/// True iff segments (a, b) and (c, d) properly cross: they share a point in
/// the relative interior of both and cross transversely there.
pub fn properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True iff the two closed segments intersect at all (including touching).
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    if properly_cross(a, b, c, d) {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// An immutable, indexed planar point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Requires n >= 3, distinct points, not all collinear, coordinates in
    /// range.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.len() < 3 {
            return Err(GeomError::InvalidPointSet(format!(
                "need at least 3 points, got {}",
                points.len()
            )));
        }
        for p in &points {
            if !p.in_range() {
                return Err(GeomError::CoordinateOutOfRange(p.x.abs().max(p.y.abs())));
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeomError::InvalidPointSet("duplicate points".into()));
        }
        let (p0, p1) = (points[0], points[1]);
        if points
            .iter()
            .all(|&p| orient(p0, p1, p) == Orientation::Collinear)
        {
            return Err(GeomError::InvalidPointSet("all points collinear".into()));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Point)> + '_ {
        self.points.iter().copied().enumerate()
    }

    /// Indices of the strict convex hull corners, CCW.
    pub fn hull_corners(&self) -> Vec<usize> {
        convex_hull(self, None).expect("point set invariant: not all collinear").corners
    }

    /// True iff every point is a hull corner or lies on the hull boundary.
    pub fn in_convex_position(&self) -> bool {
        let h = convex_hull(self, None).expect("point set invariant");
        h.corners.len() + h.on_hull.len() == self.len()
    }
}

/// Geometry-derived constants of a point set used by the per-twang perimeter
/// bound: every twang shortens the wrap by at least `twang_bound`.
#[derive(Debug, Clone, Copy)]
pub struct GeometryStats {
    pub d_min: f64,
    pub alpha_max: f64,
    pub twang_bound: f64,
}

impl GeometryStats {
    /// d_min is the smallest pairwise distance; alpha_max the maximum convex
    /// angle over non-collinear triples. O(n^3).
    pub fn compute(ps: &PointSet) -> Self {
        let n = ps.len();
        let mut d2_min = i64::MAX;
        for i in 0..n {
            for j in (i + 1)..n {
                d2_min = d2_min.min(ps.point(i).dist2(&ps.point(j)));
            }
        }
        let d_min = (d2_min as f64).sqrt();
        let mut alpha_max: f64 = 0.0;
        for apex in 0..n {
            for i in 0..n {
                if i == apex {
                    continue;
                }
                for j in (i + 1)..n {
                    if j == apex {
                        continue;
                    }
                    let (a, q, c) = (ps.point(i), ps.point(apex), ps.point(j));
                    if orient(a, q, c) == Orientation::Collinear {
                        continue;
                    }
                    let ux = (a.x - q.x) as f64;
                    let uy = (a.y - q.y) as f64;
                    let vx = (c.x - q.x) as f64;
                    let vy = (c.y - q.y) as f64;
                    let ang = (ux * vy - uy * vx).atan2(ux * vx + uy * vy).abs();
                    alpha_max = alpha_max.max(ang);
                }
            }
        }
        let twang_bound = 2.0 * d_min * (1.0 - (alpha_max / 2.0).sin());
        GeometryStats {
            d_min,
            alpha_max,
            twang_bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_basic() {
        assert_eq!(orient(pt(0, 0), pt(1, 0), pt(0, 1)), Orientation::Ccw);
        assert_eq!(orient(pt(0, 0), pt(1, 1), pt(2, 2)), Orientation::Collinear);
        assert_eq!(orient(pt(0, 0), pt(0, 1), pt(1, 0)), Orientation::Cw);
    }

    #[test]
    fn point_in_triangle_basic() {
        let (a, b, c) = (pt(0, 0), pt(2, 3), pt(4, 0));
        assert_eq!(
            point_in_triangle(pt(2, 1), a, b, c).unwrap(),
            TrianglePlacement::Interior
        );
        assert_eq!(
            point_in_triangle(pt(0, 0), a, b, c).unwrap(),
            TrianglePlacement::Boundary
        );
        assert_eq!(
            point_in_triangle(pt(5, 5), a, b, c).unwrap(),
            TrianglePlacement::Outside
        );
        assert_eq!(
            point_in_triangle(pt(1, 1), pt(0, 0), pt(1, 1), pt(2, 2)),
            Err(GeomError::DegenerateTriangle)
        );
    }

    #[test]
    fn proper_crossing() {
        assert!(properly_cross(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)));
        // shared endpoint is not a proper crossing
        assert!(!properly_cross(pt(0, 0), pt(2, 2), pt(2, 2), pt(4, 0)));
        // collinear overlap is not a proper crossing
        assert!(!properly_cross(pt(0, 0), pt(4, 0), pt(1, 0), pt(3, 0)));
        // T-contact is not a proper crossing
        assert!(!properly_cross(pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 3)));
    }

    #[test]
    fn segment_membership() {
        assert!(strictly_inside_segment(pt(1, 0), pt(0, 0), pt(2, 0)));
        assert!(!strictly_inside_segment(pt(0, 0), pt(0, 0), pt(2, 0)));
        assert!(!strictly_inside_segment(pt(3, 0), pt(0, 0), pt(2, 0)));
        assert!(!strictly_inside_segment(pt(1, 1), pt(0, 0), pt(2, 0)));
    }

    #[test]
    fn pointset_invariants() {
        assert!(PointSet::new(vec![pt(0, 0), pt(1, 0)]).is_err());
        assert!(PointSet::new(vec![pt(0, 0), pt(1, 0), pt(1, 0)]).is_err());
        assert!(PointSet::new(vec![pt(0, 0), pt(1, 1), pt(2, 2)]).is_err());
        assert!(PointSet::new(vec![pt(0, 0), pt(1 << 21, 0), pt(0, 1)]).is_err());
        assert!(PointSet::new(vec![pt(0, 0), pt(1, 0), pt(0, 1)]).is_ok());
    }

    #[test]
    fn stats_unit_square() {
        let ps = PointSet::new(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
        let st = GeometryStats::compute(&ps);
        assert!((st.d_min - 1.0).abs() < 1e-12);
        // max convex angle in the square is the right angle
        assert!((st.alpha_max - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(st.twang_bound > 0.0);
    }
}
