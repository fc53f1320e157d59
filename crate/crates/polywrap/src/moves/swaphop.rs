//! Swap and hop: the two simple-polygon transformations whose limited power
//! motivates stretches and twangs. Both are validity predicates only.

use crate::geom::{cross, orient, point_in_triangle, Orientation, PointSet, TrianglePlacement};
use crate::wrap::{is_simple, Polygonization};

/// True iff transposing positions i and i+1 (cyclically) yields a simple
/// polygon. The input must itself be simple.
pub fn swap_valid(p: &Polygonization, ps: &PointSet, i: usize) -> bool {
    debug_assert!(is_simple(p.order(), ps), "swap domain requires a simple input");
    let mut order = p.order().to_vec();
    let m = order.len();
    order.swap(i % m, (i + 1) % m);
    is_simple(&order, ps)
}

/// True iff Hop(e, v) is valid: (1) the triangle induced by v's two incident
/// edges is empty of other polygon vertices and (2) the triangle induced by
/// e and v lies on v's reflex side and is empty of other polygon vertices.
pub fn hop_valid(p: &Polygonization, ps: &PointSet, edge_pos: usize, v: usize) -> bool {
    let order = p.order();
    let m = order.len();
    let (a, b) = (order[edge_pos % m], order[(edge_pos + 1) % m]);
    if v == a || v == b {
        return false;
    }
    let pos_v = p.position_of(v);
    let u = order[(pos_v + m - 1) % m];
    let w = order[(pos_v + 1) % m];
    let (pv, pu, pw) = (ps.point(v), ps.point(u), ps.point(w));
    // collinear vertices have no reflex side
    if orient(pu, pv, pw) == Orientation::Collinear {
        return false;
    }
    // (1) triangle of v's incident edges empty of other polygon vertices
    if !triangle_clear(ps, u, v, w, &[u, v, w]) {
        return false;
    }
    // (2) triangle (a, b, v) on the reflex side of v and empty
    let (pa, pb) = (ps.point(a), ps.point(b));
    if !on_reflex_side(pv, pu, pw, pa) || !on_reflex_side(pv, pu, pw, pb) {
        return false;
    }
    triangle_clear(ps, a, b, v, &[a, b, v])
}

/// No point of S other than the listed corners lies in the closed triangle.
fn triangle_clear(ps: &PointSet, a: usize, b: usize, c: usize, corners: &[usize]) -> bool {
    let (pa, pb, pc) = (ps.point(a), ps.point(b), ps.point(c));
    ps.iter().all(|(i, p)| {
        corners.contains(&i)
            || point_in_triangle(p, pa, pb, pc)
                .map(|t| t == TrianglePlacement::Outside)
                .unwrap_or(false)
    })
}

/// True iff the direction v->q lies strictly outside the closed convex
/// angular sector at v spanned by v->u and v->w.
fn on_reflex_side(pv: crate::geom::Point, pu: crate::geom::Point, pw: crate::geom::Point, q: crate::geom::Point) -> bool {
    let s = cross(pv, pu, pw).signum();
    let c1 = cross(pv, pu, q).signum();
    let c2 = cross(pv, q, pw).signum();
    // inside or on the closed cone: c1*s >= 0 && c2*s >= 0
    !(c1 * s >= 0 && c2 * s >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn convex_polygon_admits_no_swap() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let p = Polygonization::new(vec![0, 1, 2, 3], &s).unwrap();
        for i in 0..4 {
            assert!(!swap_valid(&p, &s, i));
        }
    }

    #[test]
    fn pocket_swap_can_be_valid() {
        // two radially stacked pocket vertices whose swap stays simple
        let s = ps(&[(0, 0), (10, 0), (10, 8), (0, 8), (5, 3), (5, 6)]);
        let p = Polygonization::new(vec![0, 1, 2, 4, 5, 3], &s).unwrap();
        let pos = p.order().iter().position(|&i| i == 4).unwrap();
        let swapped = {
            let mut o = p.order().to_vec();
            o.swap(pos, pos + 1);
            o
        };
        assert_eq!(swap_valid(&p, &s, pos), is_simple(&swapped, &s));
        assert!(swap_valid(&p, &s, pos));
    }

    #[test]
    fn swap_matches_oracle_on_p5() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        for i in 0..5 {
            let mut o = p.order().to_vec();
            let m = o.len();
            let j = (i + 1) % m;
            o.swap(i, j);
            assert_eq!(swap_valid(&p, &s, i), is_simple(&o, &s), "swap at {i}");
        }
    }

    #[test]
    fn hop_valid_cases() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        // hop vertex 4 into edge (2,3) (the top edge, position 3): v sees the
        // edge and both triangles are empty
        assert!(hop_valid(&p, &s, 3, 4));
        // hopping into an incident edge is meaningless
        assert!(!hop_valid(&p, &s, 0, 4));
    }

    #[test]
    fn hop_rejects_collinear_vertex() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 0)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        assert!(!hop_valid(&p, &s, 2, 4));
    }

    #[test]
    fn hop_blocked_by_contained_vertex() {
        // a vertex inside the hop triangle invalidates the hop
        let s = ps(&[(0, 0), (10, 0), (10, 8), (0, 8), (5, 1), (5, 3)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 5, 3], &s).unwrap();
        // try hopping 4 into edge (2,5): triangle contains or misses 5
        // depending on geometry; use the is_simple oracle as the reference
        // for the positive direction only (hop conditions are sufficient
        // for simplicity)
        for pos in 0..p.len() {
            if hop_valid(&p, &s, pos, 4) {
                // execute the hop: remove 4, insert between edge endpoints
                let mut o: Vec<usize> = p.order().iter().copied().filter(|&i| i != 4).collect();
                let (a, _b) = (p.order()[pos], p.order()[(pos + 1) % p.len()]);
                let at = o.iter().position(|&i| i == a).unwrap();
                o.insert(at + 1, 4);
                assert!(is_simple(&o, &s), "hop at {pos} must stay simple");
            }
        }
    }
}
