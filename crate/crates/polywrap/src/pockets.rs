//! Pockets, the pocket hierarchy tree, pocket counts and pocket vectors.
//!
//! A hull edge absent from the wrap is a pocket lid; the boundary arc under
//! it is the pocket chain. Recursing on each pocket chain's own hull yields
//! the pocket hierarchy tree; summing the per-node point counts level by
//! level yields the pocket vector, which every twang of a non-hull vertex
//! strictly decreases lexicographically.

use serde::Serialize;

use crate::geom::{
    convex_hull_of_points, in_convex_region, strictly_inside_segment, Point, PointSet,
    TrianglePlacement,
};
use crate::wrap::Wrap;

/// A pocket: boundary arc `chain` (with repeats, as traversed) under lid
/// (a, b). Level 1 pockets hang off the hull of S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pocket {
    pub level: usize,
    pub lid: (usize, usize),
    pub chain: Vec<usize>,
}

/// Exact convex region handle for hull-nesting queries. Degenerate regions
/// (segments) are supported for bare-lid pockets.
#[derive(Debug, Clone)]
pub struct ConvexRegion {
    corners: Vec<Point>,
}

impl ConvexRegion {
    pub fn contains(&self, p: Point) -> bool {
        in_convex_region(p, &self.corners) != TrianglePlacement::Outside
    }

    pub fn corner_points(&self) -> &[Point] {
        &self.corners
    }

    /// True iff every corner of `other` lies inside this region (convexity
    /// makes that sufficient for containment).
    pub fn contains_region(&self, other: &ConvexRegion) -> bool {
        other.corners.iter().all(|&p| self.contains(p))
    }
}

/// Convex hull region of the pocket's chain points.
pub fn hull_of_pocket(pk: &Pocket, ps: &PointSet) -> ConvexRegion {
    region_of_indices(&pk.chain, ps)
}

fn region_of_indices(indices: &[usize], ps: &PointSet) -> ConvexRegion {
    let mut distinct: Vec<usize> = indices.to_vec();
    distinct.sort();
    distinct.dedup();
    let pts: Vec<Point> = distinct.iter().map(|&i| ps.point(i)).collect();
    if let Ok(h) = convex_hull_of_points(&pts) {
        return ConvexRegion {
            corners: h.corners.iter().map(|&k| pts[k]).collect(),
        };
    }
    // collinear chain: the region is the extreme segment
    let mut sorted = pts;
    sorted.sort();
    let corners = if sorted.len() == 1 {
        vec![sorted[0]]
    } else {
        vec![sorted[0], *sorted.last().unwrap()]
    };
    ConvexRegion { corners }
}

/// Number of distinct points of S on or in the hull of the pocket's chain;
/// points in double contact count once.
pub fn pocket_count(pk: &Pocket, ps: &PointSet) -> usize {
    let region = hull_of_pocket(pk, ps);
    ps.iter().filter(|&(_, p)| region.contains(p)).count()
}

/// The level-1 pockets of a wrap: one per hull edge of S that is not an
/// undirected adjacency of sigma and whose boundary arc leaves the lid
/// segment. Hull corners must occur exactly once in sigma.
pub fn pockets(w: &Wrap, ps: &PointSet) -> Vec<Pocket> {
    let hull = ps.hull_corners();
    let m = hull.len();
    let mut out = Vec::new();
    for k in 0..m {
        let (u, v) = (hull[k], hull[(k + 1) % m]);
        if w.has_adjacency(u, v) {
            continue;
        }
        if let Some(chain) = pocket_arc(w, ps, &hull, u, v) {
            if is_real_pocket(&chain, ps, u, v) {
                out.push(Pocket {
                    level: 1,
                    lid: (u, v),
                    chain,
                });
            }
        }
    }
    out
}

/// The sigma arc from u to v that contains no other hull corner.
fn pocket_arc(w: &Wrap, ps: &PointSet, hull: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let _ = ps;
    let occ_u = w.occurrences(u);
    let occ_v = w.occurrences(v);
    assert!(
        occ_u.len() == 1 && occ_v.len() == 1,
        "hull corner in double contact"
    );
    let (pu, pv) = (occ_u[0], occ_v[0]);
    let m = w.len();
    let is_corner = |i: usize| hull.contains(&i);
    let arc = |from: usize, to: usize| -> Option<Vec<usize>> {
        let mut chain = vec![w.at(from)];
        let mut p = from;
        while p != to {
            p = (p + 1) % m;
            let i = w.at(p);
            if p != to && is_corner(i) {
                return None;
            }
            chain.push(i);
        }
        Some(chain)
    };
    if let Some(c) = arc(pu, pv) {
        return Some(c);
    }
    arc(pv, pu).map(|mut c| {
        c.reverse();
        c
    })
}

/// A pocket is real when its arc contains a vertex strictly off the lid
/// segment; otherwise the hull edge is covered by collinear boundary.
fn is_real_pocket(chain: &[usize], ps: &PointSet, u: usize, v: usize) -> bool {
    let (pu, pv) = (ps.point(u), ps.point(v));
    chain.iter().any(|&i| {
        let p = ps.point(i);
        p != pu && p != pv && !strictly_inside_segment(p, pu, pv)
    })
}

/// One node of the pocket hierarchy tree.
#[derive(Debug, Clone, Serialize)]
pub struct PocketNode {
    /// Depth: 0 for the whole wrap, 1 for its pockets, and so on.
    pub depth: usize,
    /// Lid edge; None for the root.
    pub lid: Option<(usize, usize)>,
    /// Boundary chain of this node (whole sigma for the root).
    pub chain: Vec<usize>,
    /// Distinct points on the hull boundary of this node.
    pub hull: Vec<usize>,
    /// Distinct points strictly inside the hull.
    pub interior: Vec<usize>,
    /// Pocket count: points on or in the hull.
    pub count: usize,
    pub children: Vec<PocketNode>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PocketTree {
    pub root: PocketNode,
}

/// Per-level sums of pocket counts; position 0 is the whole wrap, so the
/// first entry always equals n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PocketVector(pub Vec<usize>);

impl std::fmt::Display for PocketVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

/// Strict lexicographic order; missing entries compare as zero.
pub fn lex_less(v: &PocketVector, w: &PocketVector) -> bool {
    let len = v.0.len().max(w.0.len());
    for k in 0..len {
        let a = v.0.get(k).copied().unwrap_or(0);
        let b = w.0.get(k).copied().unwrap_or(0);
        if a != b {
            return a < b;
        }
    }
    false
}

/// Build the pocket hierarchy tree of a wrap.
pub fn pocket_tree(w: &Wrap, ps: &PointSet) -> PocketTree {
    let level1 = pockets(w, ps);
    let children = level1
        .into_iter()
        .map(|pk| build_node(w, ps, pk.chain, Some(pk.lid), 1))
        .collect();
    let all: Vec<usize> = (0..ps.len()).collect();
    let (hull_pts, interior) = split_hull_interior(&all, ps, &region_of_indices(&all, ps));
    let root = PocketNode {
        depth: 0,
        lid: None,
        chain: w.sigma().to_vec(),
        hull: hull_pts,
        interior,
        count: ps.len(),
        children,
    };
    PocketTree { root }
}

fn build_node(
    w: &Wrap,
    ps: &PointSet,
    chain: Vec<usize>,
    lid: Option<(usize, usize)>,
    depth: usize,
) -> PocketNode {
    let region = region_of_indices(&chain, ps);
    let mut distinct = chain.clone();
    distinct.sort();
    distinct.dedup();

    let members: Vec<usize> = ps
        .iter()
        .filter(|&(_, p)| region.contains(p))
        .map(|(i, _)| i)
        .collect();
    let count = members.len();
    let (hull_pts, interior) = split_hull_interior(&members, ps, &region);

    // sublids: hull edges of this node's chain that are not wrap adjacencies
    // and not the node's own lid
    let mut children = Vec::new();
    let pts: Vec<Point> = distinct.iter().map(|&i| ps.point(i)).collect();
    if let Ok(h) = convex_hull_of_points(&pts) {
        let corners: Vec<usize> = h.corners.iter().map(|&k| distinct[k]).collect();
        let mc = corners.len();
        for k in 0..mc {
            let (u, v) = (corners[k], corners[(k + 1) % mc]);
            if let Some((la, lb)) = lid {
                if (u == la && v == lb) || (u == lb && v == la) {
                    continue;
                }
            }
            if w.has_adjacency(u, v) {
                continue;
            }
            if let Some(sub) = sub_arc(&chain, u, v) {
                if is_real_pocket(&sub, ps, u, v) {
                    children.push(build_node(w, ps, sub, Some((u, v)), depth + 1));
                }
            }
        }
    }

    PocketNode {
        depth,
        lid,
        chain,
        hull: hull_pts,
        interior,
        count,
        children,
    }
}

/// Maximal contiguous sub-chain running from an occurrence of u to an
/// occurrence of v (in either orientation).
fn sub_arc(chain: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let first = |x: usize| chain.iter().position(|&i| i == x);
    let last = |x: usize| chain.iter().rposition(|&i| i == x);
    let cand1 = match (first(u), last(v)) {
        (Some(i), Some(j)) if i < j => Some((i, j, false)),
        _ => None,
    };
    let cand2 = match (first(v), last(u)) {
        (Some(i), Some(j)) if i < j => Some((i, j, true)),
        _ => None,
    };
    let (i, j, rev) = match (cand1, cand2) {
        (Some(a), Some(b)) => {
            if a.1 - a.0 >= b.1 - b.0 {
                a
            } else {
                b
            }
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => return None,
    };
    if i == 0 && j == chain.len() - 1 {
        return None; // spans the whole node; only the own lid could do this
    }
    let mut sub = chain[i..=j].to_vec();
    if rev {
        sub.reverse();
    }
    Some(sub)
}

fn split_hull_interior(
    members: &[usize],
    ps: &PointSet,
    region: &ConvexRegion,
) -> (Vec<usize>, Vec<usize>) {
    let mut hull_pts = Vec::new();
    let mut interior = Vec::new();
    for &i in members {
        match in_convex_region(ps.point(i), region.corner_points()) {
            TrianglePlacement::Boundary => hull_pts.push(i),
            TrianglePlacement::Interior => interior.push(i),
            TrianglePlacement::Outside => {}
        }
    }
    (hull_pts, interior)
}

/// Pocket vector of a tree: per-depth sums of pocket counts.
pub fn pocket_vector(t: &PocketTree) -> PocketVector {
    let mut sums: Vec<usize> = Vec::new();
    fn walk(node: &PocketNode, sums: &mut Vec<usize>) {
        if sums.len() <= node.depth {
            sums.resize(node.depth + 1, 0);
        }
        sums[node.depth] += node.count;
        for ch in &node.children {
            walk(ch, sums);
        }
    }
    walk(&t.root, &mut sums);
    PocketVector(sums)
}
