//! Instance generators, the brute-force enumeration oracle, and initial
//! polygonization construction.

mod families;
mod oracle;

pub use families::{
    family_names, gen_pocket_chain, gen_pow2k, gen_quadratic_cascade, make_family, FamilySpec,
    GeneratedInstance, GenError, InstanceFamily, PocketChainInstance, QuadCascadeInstance,
};
pub use oracle::{enumerate_polygonizations, OracleError};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{orient, Orientation, Point, PointSet};
use crate::transforms::{canonical_order, pocket_side_of_lid};
use crate::wrap::{is_simple, Polygonization};

/// n distinct integer points sampled uniformly on a scale x scale grid.
/// With `general_position` no three points are collinear.
pub fn random_points(n: usize, seed: u64, scale: i64, general_position: bool) -> PointSet {
    assert!(n >= 3, "need at least 3 points");
    assert!(scale >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        'sample: while pts.len() < n {
            let p = Point::new(rng.gen_range(0..=scale), rng.gen_range(0..=scale));
            if pts.contains(&p) {
                continue 'sample;
            }
            if general_position {
                for i in 0..pts.len() {
                    for j in (i + 1)..pts.len() {
                        if orient(pts[i], pts[j], p) == Orientation::Collinear {
                            continue 'sample;
                        }
                    }
                }
            }
            pts.push(p);
        }
        match PointSet::new(pts) {
            Ok(ps) => return ps,
            Err(_) => continue, // all collinear (possible for tiny scales)
        }
    }
}

/// The canonical one-pocket polygonization with lid `e`, built directly:
/// hull cycle with the lid edge replaced by the canonically ordered pocket
/// chain. Convex-position sets yield the hull order.
pub fn initial_polygonization(ps: &PointSet, e: (usize, usize)) -> Polygonization {
    let hull = crate::geom::convex_hull(ps, None).expect("point set invariant");
    let corners = &hull.corners;
    let m = corners.len();
    let pos = (0..m)
        .position(|k| {
            let (u, v) = (corners[k], corners[(k + 1) % m]);
            (u, v) == e || (v, u) == e
        })
        .expect("e must be a hull edge");
    // orient the lid as traversed CCW on the hull
    let (a, b) = (corners[pos], corners[(pos + 1) % m]);

    // non-corner points: on-hull points stay flat on their own edges, the
    // rest go into the pocket in canonical order about a
    let mut on_edge: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    let mut pocket_verts: Vec<usize> = Vec::new();
    let corner_set: std::collections::BTreeSet<usize> = corners.iter().copied().collect();
    for (i, p) in ps.iter() {
        if corner_set.contains(&i) {
            continue;
        }
        let mut placed = false;
        for k in 0..m {
            if k == pos {
                continue;
            }
            let (u, v) = (corners[k], corners[(k + 1) % m]);
            if crate::geom::strictly_inside_segment(p, ps.point(u), ps.point(v)) {
                on_edge.entry(k).or_default().push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            pocket_verts.push(i);
        }
    }

    let side = pocket_side_of_lid(ps, (a, b));
    let chain = canonical_order(ps, (a, b), &pocket_verts, side);

    // boundary: a, chain, b, then the hull cycle from b back to a with flat
    // points inserted along their edges
    let mut order = Vec::with_capacity(ps.len());
    order.push(a);
    order.extend_from_slice(&chain);
    let mut k = (pos + 1) % m;
    loop {
        order.push(corners[k]);
        if corners[k] == a {
            order.pop();
            break;
        }
        if let Some(flats) = on_edge.get(&k) {
            let u = ps.point(corners[k]);
            let mut fl = flats.clone();
            fl.sort_by_key(|&i| u.dist2(&ps.point(i)));
            order.extend_from_slice(&fl);
        }
        k = (k + 1) % m;
    }

    debug_assert!(is_simple(&order, ps), "canonical construction must be simple");
    Polygonization::new(order, ps).expect("canonical construction is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pockets::pockets;
    use crate::transforms::lowest_hull_edge;
    use crate::wrap::cyclic_equal;

    #[test]
    fn random_points_deterministic() {
        let a = random_points(5, 1, 100, true);
        let b = random_points(5, 1, 100, true);
        assert_eq!(a.points(), b.points());
        let c = random_points(5, 2, 100, true);
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn general_position_has_no_collinear_triple() {
        let s = random_points(12, 7, 50, true);
        let n = s.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    assert_ne!(
                        orient(s.point(i), s.point(j), s.point(k)),
                        Orientation::Collinear
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_smallest_case() {
        let s = random_points(3, 3, 20, true);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn initial_polygonization_convex() {
        let s = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
        ])
        .unwrap();
        let p = initial_polygonization(&s, (0, 1));
        assert!(cyclic_equal(
            &p,
            &Polygonization::new(vec![0, 1, 2, 3], &s).unwrap()
        ));
    }

    #[test]
    fn initial_polygonization_p5() {
        let s = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
            Point::new(3, 1),
        ])
        .unwrap();
        let p = initial_polygonization(&s, (0, 1));
        // one pocket with lid (0,1), vertex 4 inside it
        let pk = pockets(p.as_wrap(), &s);
        assert_eq!(pk.len(), 1);
        assert_eq!(pk[0].lid, (0, 1));
        assert!(cyclic_equal(
            &p,
            &Polygonization::new(vec![1, 2, 3, 0, 4], &s).unwrap()
        ));
    }

    #[test]
    fn initial_polygonization_random_sets() {
        for seed in 0..10u64 {
            let s = random_points(50, seed, 1000, true);
            let e = lowest_hull_edge(&s);
            let p = initial_polygonization(&s, e);
            assert!(is_simple(p.order(), &s));
            let pk = pockets(p.as_wrap(), &s);
            assert!(pk.len() <= 1, "canonical form has at most one pocket");
            if !s.in_convex_position() {
                assert_eq!(pk.len(), 1);
            }
        }
    }
}
