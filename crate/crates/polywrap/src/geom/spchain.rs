//! The elastic-band chain sp(abc): releasing the boundary from b inside the
//! triangle abc snaps it to the chain of the convex hull of the captured
//! points on b's side of segment ac, including collinear chain vertices.

use super::hull::convex_hull_of_points;
use super::rational::{orient_rat, point_in_rat_triangle, rat_on_segment, RationalPoint};
use super::{
    cross, orient, point_in_triangle, properly_cross, GeomError, Orientation, Point, PointSet,
    TrianglePlacement,
};
use crate::wrap::Wrap;

/// Chain from a to c of the hull of {a, c} plus the points of S captured in
/// the closed triangle abc (excluding b), on b's side of segment ac. The
/// hairpin case a = c yields the single-element chain.
pub fn sp_chain_points(ps: &PointSet, a: usize, b: usize, c: usize) -> Result<Vec<usize>, GeomError> {
    if a == c {
        return Ok(vec![a]);
    }
    let (pa, pb, pc) = (ps.point(a), ps.point(b), ps.point(c));
    if orient(pa, pb, pc) == Orientation::Collinear {
        return Err(GeomError::TwangPreconditionViolated(format!(
            "twang corners {a},{b},{c} are collinear"
        )));
    }

    // capture set: points of S in the closed triangle, excluding b
    let mut captured: Vec<usize> = Vec::new();
    for (i, p) in ps.iter() {
        if i == b {
            continue;
        }
        if point_in_triangle(p, pa, pb, pc)? != TrianglePlacement::Outside {
            captured.push(i);
        }
    }
    debug_assert!(captured.contains(&a) && captured.contains(&c));
    chain_between(ps, &captured, a, c, cross(pa, pc, pb).signum())
}

/// Capture chain of a stretch half-triangle (a, x, v): the chain from a to v
/// around the points of S captured in the closed triangle, bulging toward x.
pub fn capture_chain(
    ps: &PointSet,
    a: usize,
    v: usize,
    x: &RationalPoint,
) -> Result<Vec<usize>, GeomError> {
    let (pa, pv) = (ps.point(a), ps.point(v));
    if orient_rat(pa, pv, x) == Orientation::Collinear {
        // degenerate sliver: x lies between a and v on their line (clear
        // visibility rules out any other arrangement); captured points are
        // exactly those on the closed segment [a, v]
        let ra = RationalPoint::from_point(pa);
        let rv = RationalPoint::from_point(pv);
        if !rat_on_segment(x, &ra, &rv) {
            return Err(GeomError::DegenerateInput(
                "stretch target collinear with but outside the capture segment".into(),
            ));
        }
        let mut chain: Vec<usize> = ps
            .iter()
            .filter(|&(_, p)| super::on_segment(p, pa, pv))
            .map(|(i, _)| i)
            .collect();
        chain.sort_by_key(|&i| {
            let p = ps.point(i);
            (p.x - pa.x) * (pv.x - pa.x) + (p.y - pa.y) * (pv.y - pa.y)
        });
        return Ok(chain);
    }

    let captured: Vec<usize> = ps
        .iter()
        .filter(|&(_, p)| point_in_rat_triangle(p, pa, pv, x) != TrianglePlacement::Outside)
        .map(|(i, _)| i)
        .collect();
    debug_assert!(captured.contains(&a) && captured.contains(&v));
    let side = match orient_rat(pa, pv, x) {
        Orientation::Ccw => 1,
        Orientation::Cw => -1,
        Orientation::Collinear => unreachable!(),
    };
    chain_between(ps, &captured, a, v, side)
}

/// Hull chain from a to c around `captured`, on the `bulge_side` of segment
/// ac (the sign of cross(a, c, bulge point)). Collinear points lying exactly
/// on chain edges are included as chain vertices.
fn chain_between(
    ps: &PointSet,
    captured: &[usize],
    a: usize,
    c: usize,
    bulge_side: i64,
) -> Result<Vec<usize>, GeomError> {
    let (pa, pc) = (ps.point(a), ps.point(c));

    let all_collinear = captured
        .iter()
        .all(|&i| orient(pa, pc, ps.point(i)) == Orientation::Collinear);
    if all_collinear {
        let mut chain = captured.to_vec();
        chain.sort_by_key(|&i| {
            let p = ps.point(i);
            (p.x - pa.x) * (pc.x - pa.x) + (p.y - pa.y) * (pc.y - pa.y)
        });
        return Ok(chain);
    }

    let pts: Vec<Point> = captured.iter().map(|&i| ps.point(i)).collect();
    let hull = convex_hull_of_points(&pts)?;
    let corner_idx: Vec<usize> = hull.corners.iter().map(|&k| captured[k]).collect();
    let m = corner_idx.len();
    let pos_a = corner_idx
        .iter()
        .position(|&i| i == a)
        .expect("a is extreme in the capture set");

    // two corner walks from a to c; the bulge-side chain is the one with
    // intermediate corners; when a and c are hull-adjacent the chain is the
    // bare segment and any on-segment points are collected below
    let walk = |dir_forward: bool| -> Vec<usize> {
        let mut out = vec![corner_idx[pos_a]];
        let mut k = pos_a;
        while corner_idx[k] != c {
            k = if dir_forward { (k + 1) % m } else { (k + m - 1) % m };
            out.push(corner_idx[k]);
        }
        out
    };
    let fwd = walk(true);
    let bwd = walk(false);
    let strictly_bulge_side = |chain: &[usize]| {
        chain[1..chain.len() - 1]
            .iter()
            .all(|&i| cross(pa, pc, ps.point(i)).signum() == bulge_side)
    };
    let corners_chain = if fwd.len() > 2 && strictly_bulge_side(&fwd) {
        fwd
    } else if bwd.len() > 2 && strictly_bulge_side(&bwd) {
        bwd
    } else {
        vec![a, c]
    };

    // re-insert captured points lying exactly on chain edges
    let mut chain: Vec<usize> = Vec::with_capacity(corners_chain.len());
    for w in 0..corners_chain.len() - 1 {
        let (u, v) = (corners_chain[w], corners_chain[w + 1]);
        chain.push(u);
        let (pu, pv) = (ps.point(u), ps.point(v));
        let mut on_edge: Vec<usize> = captured
            .iter()
            .copied()
            .filter(|&i| super::strictly_inside_segment(ps.point(i), pu, pv))
            .collect();
        on_edge.sort_by_key(|&i| {
            let p = ps.point(i);
            (p.x - pu.x) * (pv.x - pu.x) + (p.y - pu.y) * (pv.y - pu.y)
        });
        chain.extend(on_edge);
    }
    chain.push(c);
    Ok(chain)
}

/// sp(abc) with the non-crossing assertion against the wrap boundary. Edges
/// at the positions in `skip_positions` (the occurrence being replaced) are
/// exempt.
pub fn sp_chain(
    ps: &PointSet,
    wrap: &Wrap,
    a: usize,
    b: usize,
    c: usize,
    skip_positions: &[usize],
) -> Result<Vec<usize>, GeomError> {
    let chain = sp_chain_points(ps, a, b, c)?;
    for w in 0..chain.len().saturating_sub(1) {
        let (pu, pv) = (ps.point(chain[w]), ps.point(chain[w + 1]));
        for pos in 0..wrap.len() {
            if skip_positions.contains(&pos) {
                continue;
            }
            let (p, q) = wrap.edge(pos);
            if properly_cross(pu, pv, ps.point(p), ps.point(q)) {
                return Err(GeomError::NonSimpleResult(format!(
                    "chain edge ({},{}) properly crosses wrap edge ({},{}) at position {}",
                    chain[w],
                    chain[w + 1],
                    p,
                    q,
                    pos
                )));
            }
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    /// Independent hull-chain oracle: grow the chain by gift wrapping from a
    /// toward c around the captured points, on b's side.
    fn oracle_chain(ps: &PointSet, a: usize, b: usize, c: usize) -> Vec<usize> {
        let (pa, pb, pc) = (ps.point(a), ps.point(b), ps.point(c));
        let captured: Vec<usize> = ps
            .iter()
            .filter(|&(i, p)| {
                i != b && point_in_triangle(p, pa, pb, pc).unwrap() != TrianglePlacement::Outside
            })
            .map(|(i, _)| i)
            .collect();
        // gift wrap from a toward c: the next chain vertex is the candidate
        // such that no other captured point lies on b's side of the directed
        // edge to it; ties along a common line resolved by nearness
        let mut chain = vec![a];
        let side = cross(pa, pc, pb).signum();
        let mut current = a;
        while current != c {
            let pcur = ps.point(current);
            let mut best: Option<usize> = None;
            for &cand in &captured {
                if cand == current || (chain.contains(&cand) && cand != c) {
                    continue;
                }
                let pcand = ps.point(cand);
                let supports = captured.iter().all(|&o| {
                    o == current
                        || o == cand
                        || chain.contains(&o)
                        || cross(pcur, pcand, ps.point(o)).signum() != side
                });
                if !supports {
                    continue;
                }
                best = match best {
                    None => Some(cand),
                    Some(prev) => {
                        let pprev = ps.point(prev);
                        if cross(pcur, pprev, pcand).signum() == side
                            || (cross(pcur, pprev, pcand) == 0
                                && pcur.dist2(&pcand) < pcur.dist2(&pprev))
                        {
                            Some(cand)
                        } else {
                            Some(prev)
                        }
                    }
                };
            }
            let next = best.expect("oracle walk must progress");
            chain.push(next);
            current = next;
        }
        chain
    }

    #[test]
    fn empty_triangle_direct_chain() {
        let s = ps(&[(0, 0), (2, 3), (4, 0)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 2]);
    }

    #[test]
    fn single_captured_point() {
        let s = ps(&[(0, 0), (2, 3), (4, 0), (2, 1)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 3, 2]);
    }

    #[test]
    fn two_captured_points() {
        let s = ps(&[(0, 0), (2, 3), (4, 0), (1, 1), (3, 1)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 3, 4, 2]);
    }

    #[test]
    fn interior_of_capture_hull_excluded() {
        // (4,1) strictly inside hull of {a, (2,2), (6,2), c}: chain skips it
        let s = ps(&[(0, 0), (4, 8), (8, 0), (2, 2), (6, 2), (4, 1)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 3, 4, 2]);
    }

    #[test]
    fn collinear_point_on_chain_included() {
        // captured point exactly on segment ac
        let s = ps(&[(0, 0), (2, 3), (4, 0), (2, 0)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 3, 2]);
    }

    #[test]
    fn collinear_run_on_chain_edge_included() {
        // two captured points collinear along the chain edge
        let s = ps(&[(0, 0), (3, 6), (6, 0), (2, 2), (1, 1)]);
        // hull of {a,c,(2,2),(1,1)}: corners a, (2,2), c with (1,1) on edge
        assert_eq!(sp_chain_points(&s, 0, 1, 2).unwrap(), vec![0, 4, 3, 2]);
    }

    #[test]
    fn hairpin_chain() {
        let s = ps(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(sp_chain_points(&s, 0, 1, 0).unwrap(), vec![0]);
    }

    #[test]
    fn collinear_corners_rejected() {
        let s = ps(&[(0, 0), (2, 2), (4, 4), (0, 4)]);
        assert!(matches!(
            sp_chain_points(&s, 0, 1, 2),
            Err(GeomError::TwangPreconditionViolated(_))
        ));
    }

    #[test]
    fn matches_gift_wrapping_oracle() {
        let sets: Vec<Vec<(i64, i64)>> = vec![
            vec![(0, 0), (5, 8), (10, 0), (2, 1), (5, 2), (8, 1), (5, 4)],
            vec![(0, 0), (6, 9), (12, 0), (3, 2), (6, 1), (9, 3), (6, 5), (4, 4)],
            vec![(0, 0), (2, 3), (4, 0), (2, 1)],
        ];
        for pts in sets {
            let s = ps(&pts);
            let chain = sp_chain_points(&s, 0, 1, 2).unwrap();
            let oracle = oracle_chain(&s, 0, 1, 2);
            assert_eq!(chain, oracle, "points {:?}", pts);
        }
    }

    #[test]
    fn chain_properties() {
        let s = ps(&[(0, 0), (6, 9), (12, 0), (3, 2), (6, 1), (9, 3), (6, 5), (4, 4)]);
        let chain = sp_chain_points(&s, 0, 1, 2).unwrap();
        let (pa, pb, pc) = (s.point(0), s.point(1), s.point(2));
        // containment in the closed triangle
        for &i in &chain {
            assert_ne!(
                point_in_triangle(s.point(i), pa, pb, pc).unwrap(),
                TrianglePlacement::Outside
            );
        }
        // chain length strictly below |ab| + |bc|
        let len: f64 = chain
            .windows(2)
            .map(|w| s.point(w[0]).dist(&s.point(w[1])))
            .sum();
        assert!(len < pa.dist(&pb) + pb.dist(&pc));
        // consistent turning away from b
        let side = cross(pa, pc, pb).signum();
        for w in chain.windows(3) {
            let s_turn = cross(s.point(w[0]), s.point(w[1]), s.point(w[2])).signum();
            assert!(s_turn == 0 || s_turn != side);
        }
    }
}
