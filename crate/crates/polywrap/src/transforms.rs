//! High-level transformations: single pocket reduction, pocket reduction,
//! canonical polygonization, and the end-to-end polygonization transform
//! with journaled reverse replay.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::geom::{cross, Point, PointSet};
use crate::moves::{reverse_move, CascadePolicy, Journal, MoveEngine, MoveError, MoveEvent};
use crate::observe::CheckLevel;
use crate::pockets::{pocket_count, pockets, Pocket};
use crate::wrap::{cyclic_equal_seq, is_simple, Polygonization, Wrap, WrapError};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("selection failure: {0}")]
    SelectionFailure(String),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Wrap(#[from] WrapError),
}

/// Per-iteration record of a single pocket reduction: the number of points
/// of S in hull(A) before the move (the loop variant).
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub lid: (usize, usize),
    pub moves: usize,
    pub hull_counts: Vec<usize>,
}

/// Reduce the pocket with lid `lid` to its bare lid by redistributing its
/// vertices to other pockets with forward moves. Each iteration picks the
/// lowest-index non-lid strict corner of hull(A) and the first valid target
/// edge on another pocket's boundary (including the degenerate target edge,
/// when given).
pub fn single_pocket_reduction(
    engine: &mut MoveEngine<'_>,
    lid: (usize, usize),
    policy: &mut dyn CascadePolicy,
    degenerate_target: Option<(usize, usize)>,
) -> Result<ReductionReport, TransformError> {
    let ps = engine.points();
    let mut report = ReductionReport {
        lid,
        moves: 0,
        hull_counts: Vec::new(),
    };
    loop {
        let pks = pockets(engine.wrap(), ps);
        let pocket = match find_pocket(&pks, lid) {
            Some(p) => p.clone(),
            None => break, // reduced to the bare lid
        };
        if pocket.chain.len() < 3 {
            break;
        }
        if pks.len() < 2 && degenerate_target.is_none() {
            return Err(TransformError::PreconditionViolated(
                "single pocket reduction requires a second pocket".into(),
            ));
        }

        let hull_count = pocket_count(&pocket, ps);
        if let Some(&prev) = report.hull_counts.last() {
            if hull_count >= prev {
                return Err(TransformError::SelectionFailure(format!(
                    "hull point count did not decrease ({prev} -> {hull_count})"
                )));
            }
        }
        report.hull_counts.push(hull_count);

        let vs = corner_candidates(ps, &pocket);
        let targets = target_edges(engine.wrap(), &pks, lid, degenerate_target);
        let mut applied = false;
        'outer: for &v in &vs {
            for &edge_pos in &targets {
                if engine.forward_pair_valid(edge_pos, v) {
                    engine.forward_move(edge_pos, v, policy)?;
                    report.moves += 1;
                    applied = true;
                    break 'outer;
                }
            }
        }
        if !applied {
            return Err(TransformError::SelectionFailure(format!(
                "no valid (edge, vertex) pair to reduce pocket {lid:?}"
            )));
        }
    }
    Ok(report)
}

fn find_pocket(pks: &[Pocket], lid: (usize, usize)) -> Option<&Pocket> {
    pks.iter()
        .find(|p| p.lid == lid || (p.lid.0 == lid.1 && p.lid.1 == lid.0))
}

/// Non-lid strict corners of hull(A) that are true corners of the polygon,
/// lowest index first.
fn corner_candidates(ps: &PointSet, pocket: &Pocket) -> Vec<usize> {
    let mut distinct = pocket.chain.clone();
    distinct.sort();
    distinct.dedup();
    let pts: Vec<Point> = distinct.iter().map(|&i| ps.point(i)).collect();
    let mut out: Vec<usize> = match crate::geom::convex_hull_of_points(&pts) {
        Ok(h) => h.corners.iter().map(|&k| distinct[k]).collect(),
        Err(_) => return Vec::new(),
    };
    out.retain(|&i| i != pocket.lid.0 && i != pocket.lid.1);
    out.sort();
    out
}

/// Wrap edge positions usable as stretch targets: edges of other pockets'
/// chains, in (pocket order, chain position) order, then the degenerate
/// target edge if any.
fn target_edges(
    wrap: &Wrap,
    pks: &[Pocket],
    lid: (usize, usize),
    degenerate_target: Option<(usize, usize)>,
) -> Vec<usize> {
    let mut edge_pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in 0..wrap.len() {
        let (a, b) = wrap.edge(p);
        edge_pos.insert((a.min(b), a.max(b)), p);
    }
    let mut out = Vec::new();
    for pk in pks {
        if pk.lid == lid || (pk.lid.0 == lid.1 && pk.lid.1 == lid.0) {
            continue;
        }
        for w in pk.chain.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            if let Some(&p) = edge_pos.get(&key) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    if let Some((a, b)) = degenerate_target {
        if let Some(&p) = edge_pos.get(&(a.min(b), a.max(b))) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct PocketReductionReport {
    pub reductions: Vec<ReductionReport>,
    pub moves: usize,
}

/// Transform the polygonization into one whose single pocket has lid `e`
/// (or, when e is a polygon edge, into the convex-free degenerate form):
/// repeatedly reduce the pocket closest after e in hull order.
pub fn pocket_reduction(
    engine: &mut MoveEngine<'_>,
    e: (usize, usize),
    policy: &mut dyn CascadePolicy,
) -> Result<PocketReductionReport, TransformError> {
    let ps = engine.points();
    let hull = ps.hull_corners();
    let m = hull.len();
    let hull_edges: Vec<(usize, usize)> = (0..m).map(|k| (hull[k], hull[(k + 1) % m])).collect();
    let target_pos = hull_edges
        .iter()
        .position(|&(a, b)| (a, b) == e || (b, a) == e)
        .ok_or_else(|| {
            TransformError::PreconditionViolated(format!("{e:?} is not a hull edge of S"))
        })?;
    let degenerate = engine.wrap().has_adjacency(e.0, e.1);

    let mut report = PocketReductionReport {
        reductions: Vec::new(),
        moves: 0,
    };
    loop {
        let pks = pockets(engine.wrap(), ps);
        // first pocket lid strictly after the target edge in hull order
        let next = (1..=m).find_map(|d| {
            let (a, b) = hull_edges[(target_pos + d) % m];
            if (a, b) == e || (b, a) == e {
                return None;
            }
            find_pocket(&pks, (a, b)).map(|p| p.lid)
        });
        let lid = match next {
            Some(l) => l,
            None => break,
        };
        let dt = if degenerate { Some(e) } else { None };
        let r = single_pocket_reduction(engine, lid, policy, dt)?;
        report.moves += r.moves;
        report.reductions.push(r);
    }
    Ok(report)
}

/// Canonical order of pocket vertices about the lid corner a: descending
/// sweep angle from the ray a->b toward the pocket side, ties on a common
/// ray through a resolved nearest-first. Along the final pocket boundary
/// (a, v1, ..., vk, b) the sweep angle decreases monotonically to the lid.
pub fn canonical_order(
    ps: &PointSet,
    lid: (usize, usize),
    verts: &[usize],
    pocket_side: i64,
) -> Vec<usize> {
    let (pa, pb) = (ps.point(lid.0), ps.point(lid.1));
    let mut order = verts.to_vec();
    order.sort_by(|&u, &w| rank_cmp(ps, pa, pb, pocket_side, u, w));
    order
}

fn rank_cmp(
    ps: &PointSet,
    pa: Point,
    pb: Point,
    side: i64,
    u: usize,
    w: usize,
) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (pu, pw) = (ps.point(u), ps.point(w));
    let cu = cross(pa, pb, pu).signum() * side; // 0 iff on the lid line
    let cw = cross(pa, pb, pw).signum() * side;
    debug_assert!(cu >= 0 && cw >= 0, "pocket vertex on the wrong side");
    // points on the lid line have sweep angle zero and come last
    match (cu == 0, cw == 0) {
        (true, false) => return Ordering::Greater,
        (false, true) => return Ordering::Less,
        (true, true) => return dist_cmp(pa, pu, pw),
        _ => {}
    }
    let s = cross(pa, pw, pu).signum() * side;
    match s {
        1 => Ordering::Less,    // u sweeps farther from the lid ray
        -1 => Ordering::Greater,
        _ => dist_cmp(pa, pu, pw),
    }
}

fn dist_cmp(pa: Point, pu: Point, pw: Point) -> std::cmp::Ordering {
    pa.dist2(&pu).cmp(&pa.dist2(&pw))
}

/// Side of the lid line on which the pocket (and the whole point set) lies.
pub fn pocket_side_of_lid(ps: &PointSet, lid: (usize, usize)) -> i64 {
    let (pa, pb) = (ps.point(lid.0), ps.point(lid.1));
    ps.iter()
        .map(|(_, p)| cross(pa, pb, p).signum())
        .find(|&s| s != 0)
        .expect("point set is not collinear")
}

#[derive(Debug, Clone)]
pub struct CanonicalReport {
    pub moves: usize,
    /// Canonical order v1..vk of the pocket vertices.
    pub order: Vec<usize>,
    /// Pocket chain after each iteration (including skipped ones).
    pub chains: Vec<Vec<usize>>,
    /// Journal indices of the entries performed per iteration, for rank
    /// checks.
    pub entry_indices: Vec<Option<usize>>,
}

/// Arrange the single pocket's vertices in canonical order by forward moves.
/// After iteration i the prefix a, v1, ..., vi is consecutive along the
/// pocket boundary.
pub fn canonical_polygonization(
    engine: &mut MoveEngine<'_>,
    e: (usize, usize),
    policy: &mut dyn CascadePolicy,
) -> Result<CanonicalReport, TransformError> {
    let ps = engine.points();
    let pks = pockets(engine.wrap(), ps);
    if pks.is_empty() {
        // convex position: already canonical
        return Ok(CanonicalReport {
            moves: 0,
            order: Vec::new(),
            chains: Vec::new(),
            entry_indices: Vec::new(),
        });
    }
    if pks.len() != 1 {
        return Err(TransformError::PreconditionViolated(format!(
            "canonical polygonization requires exactly one pocket, found {}",
            pks.len()
        )));
    }
    let pk = &pks[0];
    if !(pk.lid == e || (pk.lid.0 == e.1 && pk.lid.1 == e.0)) {
        return Err(TransformError::PreconditionViolated(format!(
            "single pocket has lid {:?}, expected {:?}",
            pk.lid, e
        )));
    }
    let (a, b) = e;
    let side = pocket_side_of_lid(ps, (a, b));
    let verts: Vec<usize> = pk
        .chain
        .iter()
        .copied()
        .filter(|&i| i != a && i != b)
        .collect();
    let order = canonical_order(ps, (a, b), &verts, side);
    let rank: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(r, &v)| (v, r + 1))
        .collect();

    let mut report = CanonicalReport {
        moves: 0,
        order: order.clone(),
        chains: Vec::new(),
        entry_indices: Vec::new(),
    };

    for (i, &vi) in order.iter().enumerate() {
        let i1 = i + 1; // rank of vi
        let chain = oriented_chain(engine.wrap(), ps, (a, b))?;
        debug_assert_eq!(chain[0], a);
        // prefix a, v1..v_{i-1} is consecutive; the edge to stretch leaves
        // the last placed vertex toward the unplaced side
        let eprev = (chain[i1 - 1], chain[i1]);
        if eprev.1 == vi {
            report.chains.push(chain);
            report.entry_indices.push(None);
            continue;
        }
        let edge_pos = edge_position(engine.wrap(), eprev.0, eprev.1).ok_or_else(|| {
            TransformError::SelectionFailure(format!("pocket edge {eprev:?} not found in sigma"))
        })?;
        engine.forward_move(edge_pos, vi, policy)?;
        report.moves += 1;
        report.entry_indices.push(Some(engine.journal().moves() - 1));

        // rank discipline: this iteration involves only vertices of rank >= i
        if let Some(entry) = engine.journal().entries.last() {
            for ev in &entry.events {
                if let MoveEvent::Twang { b: tb, .. } = ev {
                    let r = rank.get(tb).copied().unwrap_or(usize::MAX);
                    if r < i1 {
                        return Err(TransformError::SelectionFailure(format!(
                            "iteration {i1} twanged vertex {tb} of rank {r}"
                        )));
                    }
                }
            }
        }

        let chain_after = oriented_chain(engine.wrap(), ps, (a, b))?;
        if chain_after[..=i1] != prefix_expected(a, &order[..i1]) {
            return Err(TransformError::SelectionFailure(format!(
                "prefix not consecutive after iteration {i1}"
            )));
        }
        report.chains.push(chain_after);
    }
    Ok(report)
}

fn prefix_expected(a: usize, placed: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(placed.len() + 1);
    v.push(a);
    v.extend_from_slice(placed);
    v
}

/// The single pocket's chain oriented to start at lid.0.
fn oriented_chain(
    wrap: &Wrap,
    ps: &PointSet,
    lid: (usize, usize),
) -> Result<Vec<usize>, TransformError> {
    let pks = pockets(wrap, ps);
    let pk = find_pocket(&pks, lid).ok_or_else(|| {
        TransformError::SelectionFailure(format!("pocket with lid {lid:?} vanished"))
    })?;
    let mut chain = pk.chain.clone();
    if chain[0] != lid.0 {
        chain.reverse();
    }
    debug_assert_eq!(chain[0], lid.0);
    debug_assert_eq!(*chain.last().unwrap(), lid.1);
    Ok(chain)
}

fn edge_position(wrap: &Wrap, a: usize, b: usize) -> Option<usize> {
    (0..wrap.len()).find(|&p| {
        let (u, w) = wrap.edge(p);
        (u == a && w == b) || (u == b && w == a)
    })
}

/// Outcome of a full polygonization-to-polygonization transform.
#[derive(Debug)]
pub struct TransformOutcome {
    pub final_order: Vec<usize>,
    /// Forward moves applied to p1 (reduction + canonicalization).
    pub forward_moves: usize,
    /// Journaled moves of p2's pipeline, replayed in reverse.
    pub reverse_moves: usize,
    /// All atomic events: p1's forward events plus the reverse events.
    pub atomic_moves: usize,
    /// Atomic events of the forward phase, in order.
    pub forward_events: Vec<MoveEvent>,
    /// Atomic events of the reverse phase, in order.
    pub reverse_events: Vec<MoveEvent>,
    /// p1's journal (reduction + canonicalization).
    pub journal_p1: Journal,
    /// p2's journal (reduction + canonicalization), replayed in reverse.
    pub journal_p2: Journal,
}

impl TransformOutcome {
    pub fn total_moves(&self) -> usize {
        self.forward_moves + self.reverse_moves
    }
}

/// Transform p1 into p2 by reducing both to the canonical polygonization of
/// the lowest hull edge and replaying p2's atomic moves in reverse.
pub fn transform(
    ps: &PointSet,
    p1: &Polygonization,
    p2: &Polygonization,
    mut make_policy: impl FnMut() -> Box<dyn CascadePolicy>,
    check: CheckLevel,
) -> Result<TransformOutcome, TransformError> {
    let e = lowest_hull_edge(ps);

    // reduce and canonicalize p1
    let mut engine1 = MoveEngine::new(ps, p1.as_wrap().clone(), check);
    let mut policy1 = make_policy();
    pocket_reduction(&mut engine1, e, policy1.as_mut())?;
    canonical_polygonization(&mut engine1, e, policy1.as_mut())?;

    // journal p2's pipeline on a copy
    let mut engine2 = MoveEngine::new(ps, p2.as_wrap().clone(), check);
    let mut policy2 = make_policy();
    pocket_reduction(&mut engine2, e, policy2.as_mut())?;
    canonical_polygonization(&mut engine2, e, policy2.as_mut())?;

    if !cyclic_equal_seq(engine1.wrap().sigma(), engine2.wrap().sigma()) {
        return Err(TransformError::SelectionFailure(
            "the two pipelines reached different canonical forms".into(),
        ));
    }

    let canonical2 = engine2.wrap().sigma().to_vec();
    let (_, journal2) = engine2.into_parts();

    // align representations, then undo p2's moves in reverse order
    engine1.align_representation(canonical2);
    let mut reverse_events = Vec::new();
    for entry in journal2.entries.iter().rev() {
        let mut evs = reverse_move(&mut engine1, entry)?;
        reverse_events.append(&mut evs);
    }

    let final_order = engine1.wrap().sigma().to_vec();
    if check != CheckLevel::Off && !is_simple(&final_order, ps) {
        return Err(TransformError::SelectionFailure(
            "transform result is not simple".into(),
        ));
    }
    let (_, journal1) = engine1.into_parts();
    let forward_events: Vec<MoveEvent> = journal1
        .entries
        .iter()
        .flat_map(|e| e.events.iter().cloned())
        .collect();

    Ok(TransformOutcome {
        final_order,
        forward_moves: journal1.moves(),
        reverse_moves: journal2.moves(),
        atomic_moves: forward_events.len() + reverse_events.len(),
        forward_events,
        reverse_events,
        journal_p1: journal1,
        journal_p2: journal2,
    })
}

/// The hull edge with the lexicographically smallest (min, max) corner pair,
/// oriented as traversed CCW on the hull.
pub fn lowest_hull_edge(ps: &PointSet) -> (usize, usize) {
    let hull = ps.hull_corners();
    let m = hull.len();
    (0..m)
        .map(|k| (hull[k], hull[(k + 1) % m]))
        .min_by_key(|&(a, b)| (a.min(b), a.max(b)))
        .expect("hull has at least 3 edges")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::FifoPolicy;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn p5() -> PointSet {
        ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)])
    }

    #[test]
    fn canonical_order_basic_and_ties() {
        // lid (a=(0,0), b=(4,0)), pocket above: descending sweep angle
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1), (1, 2)]);
        let order = canonical_order(&s, (0, 1), &[4, 5], 1);
        assert_eq!(order, vec![5, 4]); // (1,2) sweeps farther than (3,1)
        // collinear ties: nearest to a first
        let s2 = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (1, 1), (2, 2)]);
        let order2 = canonical_order(&s2, (0, 1), &[4, 5], 1);
        assert_eq!(order2, vec![4, 5]);
    }

    #[test]
    fn s6_single_pocket_reduction() {
        let s = ps(&[(0, 0), (8, 0), (8, 8), (0, 8), (6, 1), (1, 6)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 3, 5], &s).unwrap();
        let mut eng = MoveEngine::new(&s, p.into_wrap(), CheckLevel::EveryAtomic);
        let mut policy = FifoPolicy::new();
        let r = single_pocket_reduction(&mut eng, (0, 1), &mut policy, None).unwrap();
        assert!(r.moves <= 3, "expected at most 3 moves, used {}", r.moves);
        // pocket (0,1) is gone; 4 joined the other pocket
        let pks = pockets(eng.wrap(), &s);
        assert_eq!(pks.len(), 1);
        assert_eq!(pks[0].lid, (3, 0));
        assert!(pks[0].chain.contains(&4));
        // hull counts strictly decreased
        for w in r.hull_counts.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn bare_pocket_needs_no_moves() {
        let s = p5();
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        let mut eng = MoveEngine::new(&s, p.into_wrap(), CheckLevel::EveryAtomic);
        let mut policy = FifoPolicy::new();
        // pocket (1,2) does not exist; reduction of an absent pocket is a
        // no-op
        let r = single_pocket_reduction(&mut eng, (1, 2), &mut policy, None).unwrap();
        assert_eq!(r.moves, 0);
    }

    #[test]
    fn pocket_reduction_to_single_pocket() {
        let s = ps(&[(0, 0), (8, 0), (8, 8), (0, 8), (6, 1), (1, 6)]);
        let p = Polygonization::new(vec![0, 4, 1, 2, 3, 5], &s).unwrap();
        let mut eng = MoveEngine::new(&s, p.into_wrap(), CheckLevel::EveryAtomic);
        let mut policy = FifoPolicy::new();
        pocket_reduction(&mut eng, (3, 0), &mut policy).unwrap();
        let pks = pockets(eng.wrap(), &s);
        assert_eq!(pks.len(), 1);
        assert_eq!(pks[0].lid, (3, 0));
        assert!(pks[0].chain.contains(&4) && pks[0].chain.contains(&5));
    }

    #[test]
    fn canonical_fixpoint_zero_moves() {
        let s = p5();
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        let mut eng = MoveEngine::new(&s, p.into_wrap(), CheckLevel::EveryAtomic);
        let mut policy = FifoPolicy::new();
        let r1 = canonical_polygonization(&mut eng, (0, 1), &mut policy).unwrap();
        let sigma_after = eng.wrap().sigma().to_vec();
        let mut eng2 = MoveEngine::new(
            &s,
            Wrap::new(sigma_after.clone(), &s).unwrap(),
            CheckLevel::EveryAtomic,
        );
        let r2 = canonical_polygonization(&mut eng2, (0, 1), &mut policy).unwrap();
        assert_eq!(r2.moves, 0);
        assert_eq!(eng2.wrap().sigma(), sigma_after.as_slice());
        let _ = r1;
    }

    #[test]
    fn transform_p5_pair() {
        let s = p5();
        let p1 = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        let p2 = Polygonization::new(vec![0, 1, 2, 4, 3], &s).unwrap();
        let out = transform(
            &s,
            &p1,
            &p2,
            || Box::new(FifoPolicy::new()),
            CheckLevel::EveryAtomic,
        )
        .unwrap();
        assert_eq!(out.final_order, p2.order());
        let n = s.len();
        assert!(out.total_moves() <= 4 * n * n);
    }

    #[test]
    fn transform_identity() {
        let s = p5();
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        let out = transform(
            &s,
            &p,
            &p,
            || Box::new(FifoPolicy::new()),
            CheckLevel::EveryAtomic,
        )
        .unwrap();
        assert_eq!(out.final_order, p.order());
    }
}
