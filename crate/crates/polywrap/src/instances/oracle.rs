//! Brute-force polygonization enumeration for desk-scale verification.

use thiserror::Error;

use crate::geom::{properly_cross, strictly_inside_segment, PointSet};
use crate::wrap::{is_simple, Polygonization};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("point set too large for enumeration: {0} > {1}")]
    TooLarge(usize, usize),
}

const MAX_N: usize = 10;

/// All distinct simple polygonizations, deduplicated under rotation and
/// reversal. Brute force over permutations with partial-simplicity pruning;
/// n is capped at 10.
pub fn enumerate_polygonizations(ps: &PointSet) -> Result<Vec<Polygonization>, OracleError> {
    let n = ps.len();
    if n > MAX_N {
        return Err(OracleError::TooLarge(n, MAX_N));
    }
    let mut out = Vec::new();
    let mut order = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    dfs(ps, &mut order, &mut used, &mut out);
    Ok(out)
}

fn dfs(ps: &PointSet, order: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Polygonization>) {
    let n = ps.len();
    if order.len() == n {
        // reversal canonicalization: keep order[1] < order[n-1]
        if order[1] > order[n - 1] {
            return;
        }
        if edge_ok(ps, order, order[n - 1], order[0]) && is_simple(order, ps) {
            out.push(Polygonization::new(order.clone(), ps).expect("checked simple"));
        }
        return;
    }
    for k in 1..n {
        if used[k] {
            continue;
        }
        if !edge_ok(ps, order, *order.last().unwrap(), k) {
            continue;
        }
        used[k] = true;
        order.push(k);
        dfs(ps, order, used, out);
        order.pop();
        used[k] = false;
    }
}

/// Partial-simplicity pruning for appending the edge (u, v): it must not
/// properly cross existing edges and no point may lie strictly inside it.
fn edge_ok(ps: &PointSet, order: &[usize], u: usize, v: usize) -> bool {
    let (pu, pv) = (ps.point(u), ps.point(v));
    for (i, p) in ps.iter() {
        if i != u && i != v && strictly_inside_segment(p, pu, pv) {
            return false;
        }
    }
    for w in order.windows(2) {
        if properly_cross(pu, pv, ps.point(w[0]), ps.point(w[1])) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn convex_position_has_one() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        assert_eq!(enumerate_polygonizations(&s).unwrap().len(), 1);
    }

    #[test]
    fn p5_has_four() {
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)]);
        assert_eq!(enumerate_polygonizations(&s).unwrap().len(), 4);
    }

    #[test]
    fn too_large_rejected() {
        let pts: Vec<(i64, i64)> = (0..11).map(|i| (i, i * i)).collect();
        let s = ps(&pts);
        assert_eq!(
            enumerate_polygonizations(&s),
            Err(OracleError::TooLarge(11, 10))
        );
    }

    #[test]
    fn count_stable_under_relabeling() {
        let s1 = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)]);
        let s2 = ps(&[(3, 1), (0, 4), (4, 0), (0, 0), (4, 4)]);
        assert_eq!(
            enumerate_polygonizations(&s1).unwrap().len(),
            enumerate_polygonizations(&s2).unwrap().len()
        );
    }
}
