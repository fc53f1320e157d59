//! Transient exact rational points.
//!
//! Stretch targets live in the interior of a wrap edge and are represented
//! exactly as rationals. They are used to pick capture triangles and to
//! re-verify visibility, then discarded; a rational coordinate never enters
//! persistent wrap state.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Orientation, Point};

/// Exact rational scalar used throughout the visibility machinery.
pub type Rat = BigRational;

pub fn rat_from_i64(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A planar point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RationalPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_point(p: Point) -> Self {
        RationalPoint {
            x: rat_from_i64(p.x),
            y: rat_from_i64(p.y),
        }
    }

    /// The point A + t (B - A) on segment AB.
    pub fn on_edge(a: Point, b: Point, t: &Rat) -> Self {
        RationalPoint {
            x: rat_from_i64(a.x) + t * rat_from_i64(b.x - a.x),
            y: rat_from_i64(a.y) + t * rat_from_i64(b.y - a.y),
        }
    }

    /// Exact equality with an integer point.
    pub fn is_integer_point(&self, p: Point) -> bool {
        self.x == rat_from_i64(p.x) && self.y == rat_from_i64(p.y)
    }

    /// Serialize as (x numerator, x denominator, y numerator, y denominator).
    /// Coordinates arising from stretch targets always fit in i128.
    pub fn to_quad(&self) -> [i128; 4] {
        let cv = |b: &BigInt| -> i128 {
            i128::try_from(b.clone()).expect("rational coordinate exceeds i128")
        };
        [
            cv(self.x.numer()),
            cv(self.x.denom()),
            cv(self.y.numer()),
            cv(self.y.denom()),
        ]
    }

    pub fn from_quad(q: [i128; 4]) -> Self {
        RationalPoint {
            x: BigRational::new(BigInt::from(q[0]), BigInt::from(q[1])),
            y: BigRational::new(BigInt::from(q[2]), BigInt::from(q[3])),
        }
    }
}

/// Orientation of (p, q, x) where x is rational.
pub fn orient_rat(p: Point, q: Point, x: &RationalPoint) -> Orientation {
    let ax = rat_from_i64(q.x - p.x);
    let ay = rat_from_i64(q.y - p.y);
    let bx = &x.x - rat_from_i64(p.x);
    let by = &x.y - rat_from_i64(p.y);
    let det = ax * by - ay * bx;
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// Placement of a rational point against the closed triangle (a, b, c) of
/// integer points (which must not be collinear).
pub fn rat_in_triangle(x: &RationalPoint, a: Point, b: Point, c: Point) -> super::TrianglePlacement {
    use super::TrianglePlacement::*;
    let s1 = sign(orient_rat(a, b, x));
    let s2 = sign(orient_rat(b, c, x));
    let s3 = sign(orient_rat(c, a, x));
    if (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0) {
        Interior
    } else if (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0) {
        Boundary
    } else {
        Outside
    }
}

/// Placement of an integer point against the closed triangle (p, q, x) with
/// one rational corner.
pub fn point_in_rat_triangle(
    w: Point,
    p: Point,
    q: Point,
    x: &RationalPoint,
) -> super::TrianglePlacement {
    use super::TrianglePlacement::*;
    let wr = RationalPoint::from_point(w);
    let s1 = super::cross(p, q, w).signum() as i8;
    let s2 = sign(orient_rat2(q, x, &wr));
    let s3 = sign(orient_rat2_rev(x, p, &wr));
    if (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0) {
        Interior
    } else if (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0) {
        Boundary
    } else {
        Outside
    }
}

fn sign(o: Orientation) -> i8 {
    match o {
        Orientation::Ccw => 1,
        Orientation::Cw => -1,
        Orientation::Collinear => 0,
    }
}

/// Orientation of (p, x, w): integer, rational, rational.
fn orient_rat2(p: Point, x: &RationalPoint, w: &RationalPoint) -> Orientation {
    let ax = &x.x - rat_from_i64(p.x);
    let ay = &x.y - rat_from_i64(p.y);
    let bx = &w.x - rat_from_i64(p.x);
    let by = &w.y - rat_from_i64(p.y);
    det_sign(ax, ay, bx, by)
}

/// Orientation of (x, q, w): rational first corner.
fn orient_rat2_rev(x: &RationalPoint, q: Point, w: &RationalPoint) -> Orientation {
    let ax = rat_from_i64(q.x) - &x.x;
    let ay = rat_from_i64(q.y) - &x.y;
    let bx = &w.x - &x.x;
    let by = &w.y - &x.y;
    det_sign(ax, ay, bx, by)
}

fn det_sign(ax: Rat, ay: Rat, bx: Rat, by: Rat) -> Orientation {
    let det = ax * by - ay * bx;
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// True iff the rational point x lies on the closed segment [a, b] of
/// rational endpoints.
pub fn rat_on_segment(x: &RationalPoint, a: &RationalPoint, b: &RationalPoint) -> bool {
    let cr = (&b.x - &a.x) * (&x.y - &a.y) - (&b.y - &a.y) * (&x.x - &a.x);
    if !cr.is_zero() {
        return false;
    }
    let dot = (&x.x - &a.x) * (&b.x - &a.x) + (&x.y - &a.y) * (&b.y - &a.y);
    if dot.is_negative() {
        return false;
    }
    let len2 = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    dot <= len2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_parameterization() {
        let a = Point::new(0, 0);
        let b = Point::new(4, 4);
        let x = RationalPoint::on_edge(a, b, &rat(1, 2));
        assert!(x.is_integer_point(Point::new(2, 2)));
        let q = x.to_quad();
        assert_eq!(RationalPoint::from_quad(q), x);
    }

    #[test]
    fn rational_orientation() {
        let x = RationalPoint::on_edge(Point::new(0, 2), Point::new(4, 2), &rat(1, 4));
        assert_eq!(
            orient_rat(Point::new(0, 0), Point::new(4, 0), &x),
            Orientation::Ccw
        );
    }

    #[test]
    fn mixed_triangle_membership() {
        use crate::geom::TrianglePlacement::*;
        // triangle (0,0), (4,0), x=(2, 3/2)
        let x = RationalPoint::new(rat(2, 1), rat(3, 2));
        assert_eq!(
            point_in_rat_triangle(Point::new(2, 1), Point::new(0, 0), Point::new(4, 0), &x),
            Interior
        );
        assert_eq!(
            point_in_rat_triangle(Point::new(2, 2), Point::new(0, 0), Point::new(4, 0), &x),
            Outside
        );
        assert_eq!(
            point_in_rat_triangle(Point::new(0, 0), Point::new(0, 0), Point::new(4, 0), &x),
            Boundary
        );
    }

    #[test]
    fn on_segment_rational() {
        let a = RationalPoint::from_point(Point::new(0, 0));
        let b = RationalPoint::from_point(Point::new(4, 2));
        let x = RationalPoint::new(rat(2, 1), rat(1, 1));
        assert!(rat_on_segment(&x, &a, &b));
        let y = RationalPoint::new(rat(2, 1), rat(3, 2));
        assert!(!rat_on_segment(&y, &a, &b));
    }
}
