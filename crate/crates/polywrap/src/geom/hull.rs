//! Convex hulls over index subsets of a point set.

use super::{cross, orient, GeomError, Orientation, Point, PointSet};

/// Hull of an index subset: strict corners in CCW cyclic order, plus the
/// non-corner points lying exactly on the hull boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexHull {
    /// Strict corner indices, CCW, starting from the lexicographically
    /// smallest point.
    pub corners: Vec<usize>,
    /// Indices of subset points on the hull boundary that are not corners.
    pub on_hull: Vec<usize>,
}

impl ConvexHull {
    pub fn corner_points(&self, ps: &PointSet) -> Vec<Point> {
        self.corners.iter().map(|&i| ps.point(i)).collect()
    }

    /// True iff (a, b) is a hull edge, i.e. a and b are cyclically adjacent
    /// corners (in either direction).
    pub fn is_hull_edge(&self, a: usize, b: usize) -> bool {
        let m = self.corners.len();
        (0..m).any(|i| {
            let (u, w) = (self.corners[i], self.corners[(i + 1) % m]);
            (u == a && w == b) || (u == b && w == a)
        })
    }

    /// Hull edges as corner index pairs, CCW.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.corners.len();
        (0..m).map(|i| (self.corners[i], self.corners[(i + 1) % m])).collect()
    }
}

/// Monotone-chain convex hull of `subset` (defaults to all indices).
/// Corner list contains true corners only; collinear-on-hull points are
/// reported separately.
pub fn convex_hull(ps: &PointSet, subset: Option<&[usize]>) -> Result<ConvexHull, GeomError> {
    let idx: Vec<usize> = match subset {
        Some(s) => s.to_vec(),
        None => (0..ps.len()).collect(),
    };
    convex_hull_indexed(&idx, |i| ps.point(i))
}

/// Hull of raw points; returns positions into `pts`.
pub fn convex_hull_of_points(pts: &[Point]) -> Result<ConvexHull, GeomError> {
    let idx: Vec<usize> = (0..pts.len()).collect();
    convex_hull_indexed(&idx, |i| pts[i])
}

fn convex_hull_indexed(
    idx: &[usize],
    point_of: impl Fn(usize) -> Point,
) -> Result<ConvexHull, GeomError> {
    if idx.len() < 3 {
        return Err(GeomError::DegenerateInput(format!(
            "hull needs at least 3 indices, got {}",
            idx.len()
        )));
    }
    let mut order: Vec<usize> = {
        // dedupe identical indices defensively; chains below assume distinct points
        let mut o = idx.to_vec();
        o.sort();
        o.dedup();
        o
    };
    order.sort_by_key(|&i| {
        let p = point_of(i);
        (p.x, p.y)
    });

    let p0 = point_of(order[0]);
    let p1 = point_of(*order.last().unwrap());
    if order
        .iter()
        .all(|&i| orient(p0, p1, point_of(i)) == Orientation::Collinear)
    {
        return Err(GeomError::DegenerateInput("all points collinear".into()));
    }

    // strict turns only: collinear points are dropped from the corner chains
    let build = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut chain: Vec<usize> = Vec::new();
        for i in iter {
            while chain.len() >= 2 {
                let a = point_of(chain[chain.len() - 2]);
                let b = point_of(chain[chain.len() - 1]);
                if cross(a, b, point_of(i)) <= 0 {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(i);
        }
        chain
    };

    let mut lower = build(&mut order.iter().copied());
    let mut upper = build(&mut order.iter().rev().copied());

    lower.pop();
    upper.pop();
    let mut corners = lower;
    corners.append(&mut upper);

    let corner_set: std::collections::BTreeSet<usize> = corners.iter().copied().collect();
    let m = corners.len();
    let mut on_hull = Vec::new();
    for &i in &order {
        if corner_set.contains(&i) {
            continue;
        }
        let p = point_of(i);
        let on_boundary = (0..m).any(|k| {
            let a = point_of(corners[k]);
            let b = point_of(corners[(k + 1) % m]);
            super::strictly_inside_segment(p, a, b)
        });
        if on_boundary {
            on_hull.push(i);
        }
    }

    Ok(ConvexHull { corners, on_hull })
}

/// Exact membership of a point in the closed convex hull given by CCW corner
/// points.
pub fn in_convex_region(p: Point, corners: &[Point]) -> super::TrianglePlacement {
    use super::TrianglePlacement::*;
    match corners.len() {
        0 => Outside,
        1 => {
            if p == corners[0] {
                Boundary
            } else {
                Outside
            }
        }
        2 => {
            if super::on_segment(p, corners[0], corners[1]) {
                Boundary
            } else {
                Outside
            }
        }
        m => {
            let mut on_edge = false;
            for i in 0..m {
                let (a, b) = (corners[i], corners[(i + 1) % m]);
                match cross(a, b, p).signum() {
                    s if s < 0 => return Outside,
                    0 => {
                        if super::on_segment(p, a, b) {
                            on_edge = true;
                        } else {
                            return Outside;
                        }
                    }
                    _ => {}
                }
            }
            if on_edge {
                Boundary
            } else {
                Interior
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TrianglePlacement;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    /// Independent oracle: i is a strict hull corner iff some direction
    /// strictly separates it from all other points (O(n^2) per point).
    fn oracle_corners(ps: &PointSet) -> std::collections::BTreeSet<usize> {
        let n = ps.len();
        let mut out = std::collections::BTreeSet::new();
        'point: for i in 0..n {
            // i is NOT a strict corner iff it lies in a closed triangle of
            // other points or strictly inside a segment of other points
            let others: Vec<usize> = (0..n).filter(|&t| t != i).collect();
            for a in 0..others.len() {
                for b in (a + 1)..others.len() {
                    if super::super::strictly_inside_segment(
                        ps.point(i),
                        ps.point(others[a]),
                        ps.point(others[b]),
                    ) {
                        continue 'point;
                    }
                    for c in (b + 1)..others.len() {
                        if let Ok(t) = super::super::point_in_triangle(
                            ps.point(i),
                            ps.point(others[a]),
                            ps.point(others[b]),
                            ps.point(others[c]),
                        ) {
                            if t != TrianglePlacement::Outside {
                                continue 'point;
                            }
                        }
                    }
                }
            }
            out.insert(i);
        }
        out
    }

    #[test]
    fn square_hull() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let h = convex_hull(&s, None).unwrap();
        assert_eq!(h.corners.len(), 4);
        assert!(h.on_hull.is_empty());
        // CCW check
        let pts = h.corner_points(&s);
        assert!(cross(pts[0], pts[1], pts[2]) > 0);
    }

    #[test]
    fn interior_point_excluded() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)]);
        let h = convex_hull(&s, None).unwrap();
        let mut c = h.corners.clone();
        c.sort();
        assert_eq!(c, vec![0, 1, 2, 3]);
        assert!(h.on_hull.is_empty());
    }

    #[test]
    fn collinear_on_edge_reported() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 0)]);
        let h = convex_hull(&s, None).unwrap();
        let mut c = h.corners.clone();
        c.sort();
        assert_eq!(c, vec![0, 1, 2, 3]);
        assert_eq!(h.on_hull, vec![4]);
    }

    #[test]
    fn all_collinear_rejected() {
        let s = ps(&[(0, 0), (1, 1), (2, 2), (0, 5)]);
        assert!(convex_hull(&s, Some(&[0, 1, 2])).is_err());
    }

    #[test]
    fn matches_oracle_on_fixed_sets() {
        for pts in [
            vec![(0, 0), (4, 0), (4, 4), (0, 4), (3, 1), (1, 3), (2, 2)],
            vec![(0, 0), (8, 0), (8, 8), (0, 8), (6, 1), (1, 6)],
            vec![(0, 0), (5, 1), (9, 0), (10, 5), (5, 9), (0, 5), (5, 5), (4, 2)],
        ] {
            let s = ps(&pts);
            let h = convex_hull(&s, None).unwrap();
            let got: std::collections::BTreeSet<usize> = h.corners.iter().copied().collect();
            assert_eq!(got, oracle_corners(&s), "set {:?}", pts);
        }
    }

    #[test]
    fn region_membership() {
        let sq = [
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
        ];
        assert_eq!(in_convex_region(Point::new(2, 2), &sq), TrianglePlacement::Interior);
        assert_eq!(in_convex_region(Point::new(2, 0), &sq), TrianglePlacement::Boundary);
        assert_eq!(in_convex_region(Point::new(5, 2), &sq), TrianglePlacement::Outside);
        // degenerate segment region
        let seg = [Point::new(0, 0), Point::new(4, 0)];
        assert_eq!(in_convex_region(Point::new(2, 0), &seg), TrianglePlacement::Boundary);
        assert_eq!(in_convex_region(Point::new(2, 1), &seg), TrianglePlacement::Outside);
    }
}
