//! The move engine: owns one wrap and one journal, applies stretches,
//! twangs, cascades, and forward moves, and enforces the per-atomic-move
//! invariants at the configured check level.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::geom::visibility::{convex_cone_span_on_edge, subtract_closed};
use crate::geom::{
    capture_chain, clearly_sees, orient, rat_on_segment, sp_chain, visible_intervals,
    GeomError, GeometryStats, Interval, Orientation, PointSet, RationalPoint,
};
use crate::observe::CheckLevel;
use crate::wrap::{is_simple, Wrap};

use super::journal::{sigma_digest, Journal, MoveEntry, MoveEvent};
use super::policy::{CascadePolicy, TwangSite};

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("visibility violated: {0}")]
    VisibilityViolated(String),
    #[error("reflex side violated: {0}")]
    ReflexSideViolated(String),
    #[error("stuck cascade: {0}")]
    StuckCascade(String),
    #[error("cascade cap exceeded after {0} twangs")]
    CascadeCapExceeded(usize),
    #[error("reversal mismatch: {0}")]
    ReversalMismatch(String),
    #[error("invariant failure: {0}")]
    InvariantFailure(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Tolerance for the floating-point side of the perimeter-descent bound.
const PERIMETER_TOL: f64 = 1e-9;

pub struct MoveEngine<'a> {
    ps: &'a PointSet,
    wrap: Wrap,
    journal: Journal,
    check: CheckLevel,
    stats: GeometryStats,
    hull_corner: Vec<bool>,
    cascade_cap: usize,
    in_cascade: bool,
    enforce_hull_rule: bool,
}

impl<'a> MoveEngine<'a> {
    pub fn new(ps: &'a PointSet, wrap: Wrap, check: CheckLevel) -> Self {
        let mut hull_corner = vec![false; ps.len()];
        for i in ps.hull_corners() {
            hull_corner[i] = true;
        }
        let n = ps.len();
        MoveEngine {
            ps,
            wrap,
            journal: Journal::new(),
            check,
            stats: GeometryStats::compute(ps),
            hull_corner,
            cascade_cap: n.pow(4).max(4096),
            in_cascade: false,
            enforce_hull_rule: false,
        }
    }

    pub fn with_cascade_cap(mut self, cap: usize) -> Self {
        self.cascade_cap = cap;
        self
    }

    pub fn points(&self) -> &'a PointSet {
        self.ps
    }

    pub fn wrap(&self) -> &Wrap {
        &self.wrap
    }

    pub fn stats(&self) -> &GeometryStats {
        &self.stats
    }

    pub fn journal(&self) -> &Journal {
        &self.journal
    }

    pub fn journal_mut(&mut self) -> &mut Journal {
        &mut self.journal
    }

    pub fn check_level(&self) -> CheckLevel {
        self.check
    }

    pub fn digest(&self) -> u64 {
        sigma_digest(self.wrap.sigma())
    }

    pub fn is_hull_corner(&self, i: usize) -> bool {
        self.hull_corner[i]
    }

    pub fn into_parts(self) -> (Wrap, Journal) {
        (self.wrap, self.journal)
    }

    /// Re-represent sigma by a rotation/reversal of itself (identity on the
    /// closed curve). Used to align two engines before reverse replay.
    pub fn align_representation(&mut self, sigma: Vec<usize>) {
        self.wrap.set_representation(sigma);
    }

    /// Stretch the edge at `edge_pos` out to vertex `v` through the clearly
    /// visible target x. The edge (a, b) is replaced by a, chain1, v,
    /// chain2, b; v's occurrence count increases by one.
    pub fn stretch(
        &mut self,
        edge_pos: usize,
        v: usize,
        x: &RationalPoint,
    ) -> Result<MoveEvent, MoveError> {
        let (a, b) = self.wrap.edge(edge_pos);
        if v == a || v == b {
            return Err(MoveError::VisibilityViolated(format!(
                "stretch vertex {v} is an endpoint of the stretch edge ({a},{b})"
            )));
        }
        let (pa, pb) = (self.ps.point(a), self.ps.point(b));
        let ra = RationalPoint::from_point(pa);
        let rb = RationalPoint::from_point(pb);
        if !rat_on_segment(x, &ra, &rb) || x.is_integer_point(pa) || x.is_integer_point(pb) {
            return Err(MoveError::VisibilityViolated(
                "stretch target x is not in the open edge".into(),
            ));
        }
        if !clearly_sees(self.ps, &self.wrap, v, x) {
            return Err(MoveError::VisibilityViolated(format!(
                "vertex {v} does not clearly see the stretch target"
            )));
        }

        let chain1 = capture_chain(self.ps, a, v, x)?;
        let chain2 = capture_chain(self.ps, v, b, x)?;
        let c1 = &chain1[1..chain1.len() - 1];
        let c2 = &chain2[1..chain2.len() - 1];
        let mut inserted = Vec::with_capacity(c1.len() + 1 + c2.len());
        inserted.extend_from_slice(c1);
        inserted.push(v);
        inserted.extend_from_slice(c2);

        let pre_digest = self.digest();
        self.wrap.splice_insert(edge_pos, &inserted);
        let ev = MoveEvent::Stretch {
            edge_pos,
            a,
            b,
            v,
            x: x.clone(),
            chain1: c1.to_vec(),
            chain2: c2.to_vec(),
            pre_digest,
            post_digest: self.digest(),
        };
        self.check_atomic(None)?;
        Ok(ev)
    }

    /// Degenerate stretch reversing a hairpin twang: the collapsed spike
    /// (b, a) is re-inserted so that b lands at vector index `b_index`. The
    /// edge "ac" has length zero, so no capture is possible.
    pub fn zero_length_stretch(
        &mut self,
        b_index: usize,
        a: usize,
        v: usize,
    ) -> Result<MoveEvent, MoveError> {
        let pre_digest = self.digest();
        self.wrap.splice_hairpin_reverse(b_index, v, a);
        let ev = MoveEvent::Stretch {
            edge_pos: b_index,
            a,
            b: a,
            v,
            x: RationalPoint::from_point(self.ps.point(a)),
            chain1: Vec::new(),
            chain2: Vec::new(),
            pre_digest,
            post_digest: self.digest(),
        };
        self.check_atomic(None)?;
        Ok(ev)
    }

    /// Preconditions of Twang at the occurrence `pos`: the vertex is in
    /// double contact, the corners are non-collinear (or form a hairpin),
    /// and no other occurrence is nested inside the twang triangle.
    pub fn twang_preconditions(&self, pos: usize) -> Result<(), String> {
        let b = self.wrap.at(pos);
        let (a, c) = self.wrap.neighbors(pos);
        if self.wrap.occurrence_count(b) < 2 {
            return Err(format!("vertex {b} is not in double contact"));
        }
        if a == c {
            return Ok(()); // hairpin: always releasable
        }
        let (pa, pb, pc) = (self.ps.point(a), self.ps.point(b), self.ps.point(c));
        if orient(pa, pb, pc) == Orientation::Collinear {
            return Err(format!("corners {a},{b},{c} are collinear"));
        }
        if let Some(reason) = self.nested_contact(pos, a, b, c) {
            return Err(reason);
        }
        Ok(())
    }

    /// Nested-double-contact test: another occurrence of b blocks the twang
    /// iff both of its incident edge directions lie in the closed angular
    /// sector spanned by b->a and b->c, at least one strictly inside.
    /// Directions exactly along both boundary rays (doubled edges) do not
    /// block.
    fn nested_contact(&self, pos: usize, a: usize, b: usize, c: usize) -> Option<String> {
        let pb = self.ps.point(b);
        let u = self.ps.point(a);
        let w = self.ps.point(c);
        let du = (u.x - pb.x, u.y - pb.y);
        let dw = (w.x - pb.x, w.y - pb.y);
        let s = (du.0 * dw.1 - du.1 * dw.0).signum();
        debug_assert!(s != 0);
        let cr = |p: (i64, i64), q: (i64, i64)| p.0 * q.1 - p.1 * q.0;
        let in_closed = |d: (i64, i64)| cr(du, d) * s >= 0 && cr(d, dw) * s >= 0;
        let strictly_in = |d: (i64, i64)| cr(du, d) * s > 0 && cr(d, dw) * s > 0;
        for p2 in self.wrap.occurrences(b) {
            if p2 == pos {
                continue;
            }
            let (a2, c2) = self.wrap.neighbors(p2);
            let pa2 = self.ps.point(a2);
            let pc2 = self.ps.point(c2);
            let d1 = (pa2.x - pb.x, pa2.y - pb.y);
            let d2 = (pc2.x - pb.x, pc2.y - pb.y);
            if in_closed(d1) && in_closed(d2) && (strictly_in(d1) || strictly_in(d2)) {
                return Some(format!(
                    "occurrence of {b} at position {p2} is nested inside the twang triangle"
                ));
            }
        }
        None
    }

    /// Twang the occurrence at `pos`: replace a, b, c by sp(abc) (hairpin
    /// a, b, a collapses to a). The twang vertex loses one occurrence; chain
    /// vertices already present in sigma enter double contact.
    pub fn twang(&mut self, pos: usize) -> Result<MoveEvent, MoveError> {
        self.twang_preconditions(pos)
            .map_err(GeomError::TwangPreconditionViolated)?;
        let m = self.wrap.len();
        let b = self.wrap.at(pos);
        let (a, c) = self.wrap.neighbors(pos);
        let pre_digest = self.digest();
        let pre_perimeter = if self.check == CheckLevel::EveryAtomic {
            Some(self.wrap.perimeter(self.ps))
        } else {
            None
        };
        if self.in_cascade && self.enforce_hull_rule && self.hull_corner[b] {
            return Err(MoveError::InvariantFailure(format!(
                "hull corner {b} selected as cascade twang vertex"
            )));
        }

        let (chain, hairpin) = if a == c {
            self.wrap.splice_hairpin(pos);
            (vec![a], true)
        } else {
            let skip = [(pos + m - 1) % m, pos];
            let chain = sp_chain(self.ps, &self.wrap, a, b, c, &skip)?;
            self.wrap.splice_twang(pos, &chain[1..chain.len() - 1]);
            (chain, false)
        };

        let ev = MoveEvent::Twang {
            pos,
            a,
            b,
            c,
            chain,
            hairpin,
            pre_digest,
            post_digest: self.digest(),
        };
        self.check_atomic(pre_perimeter)?;
        Ok(ev)
    }

    fn check_atomic(&self, pre_perimeter: Option<f64>) -> Result<(), MoveError> {
        if self.check != CheckLevel::EveryAtomic {
            return Ok(());
        }
        let ws = self.wrap.weak_simplicity_check(self.ps);
        if let crate::wrap::WeakSimplicity::Violation(v) = ws {
            return Err(MoveError::InvariantFailure(format!(
                "weak simplicity violated after atomic move: {v}"
            )));
        }
        if let Some(pre) = pre_perimeter {
            let post = self.wrap.perimeter(self.ps);
            let need = self.stats.twang_bound - PERIMETER_TOL;
            if pre - post < need {
                return Err(MoveError::InvariantFailure(format!(
                    "twang decreased perimeter by {} < required {}",
                    pre - post,
                    need
                )));
            }
        }
        Ok(())
    }

    /// Twangable occurrences of point `b`, sorted by (position of a,
    /// position of c).
    fn twang_candidates(&self, b: usize) -> Vec<TwangSite> {
        let m = self.wrap.len();
        let mut sites: Vec<TwangSite> = self
            .wrap
            .occurrences(b)
            .into_iter()
            .filter(|&pos| self.twang_preconditions(pos).is_ok())
            .map(|pos| {
                let (a, c) = self.wrap.neighbors(pos);
                TwangSite { pos, a, b, c }
            })
            .collect();
        sites.sort_by_key(|s| ((s.pos + m - 1) % m, (s.pos + 1) % m));
        sites
    }

    /// Run twangs until no double contact remains. Returns the events. The
    /// result is a polygonization by construction.
    pub fn twang_cascade(
        &mut self,
        policy: &mut dyn CascadePolicy,
    ) -> Result<Vec<MoveEvent>, MoveError> {
        policy.begin_cascade(&self.wrap);
        let mut events = Vec::new();
        self.in_cascade = true;
        let result = self.cascade_loop(policy, &mut events);
        self.in_cascade = false;
        result?;
        Ok(events)
    }

    fn cascade_loop(
        &mut self,
        policy: &mut dyn CascadePolicy,
        events: &mut Vec<MoveEvent>,
    ) -> Result<(), MoveError> {
        while self.wrap.has_double_contact() {
            if events.len() >= self.cascade_cap {
                return Err(MoveError::CascadeCapExceeded(events.len()));
            }
            let order = policy.point_order(&self.wrap);
            let mut twanged = false;
            for b in order {
                let candidates = self.twang_candidates(b);
                if candidates.is_empty() {
                    continue;
                }
                let site = policy.pick_site(&self.wrap, &candidates);
                let ev = self.twang(site.pos)?;
                let inserted: Vec<usize> = match &ev {
                    MoveEvent::Twang { chain, hairpin, .. } if !hairpin => {
                        chain[1..chain.len() - 1].to_vec()
                    }
                    _ => Vec::new(),
                };
                policy.observe_twang(&self.wrap, b, &inserted);
                events.push(ev);
                twanged = true;
                break;
            }
            if !twanged {
                return Err(MoveError::StuckCascade(
                    "no double contact has a twangable occurrence".into(),
                ));
            }
        }
        Ok(())
    }

    /// Parameter intervals of the edge that are both clearly visible from v
    /// and strictly on v's reflex side.
    pub fn reflex_visible_intervals(
        &self,
        edge_pos: usize,
        v: usize,
    ) -> Result<Vec<Interval>, MoveError> {
        let (u, w) = match self.vertex_neighbors(v) {
            Some(nb) => nb,
            None => {
                return Err(MoveError::InvariantFailure(format!(
                    "vertex {v} does not occur exactly once"
                )))
            }
        };
        let (pv, pu, pw) = (self.ps.point(v), self.ps.point(u), self.ps.point(w));
        if orient(pu, pv, pw) == Orientation::Collinear {
            return Err(MoveError::ReflexSideViolated(format!(
                "vertex {v} is collinear with its neighbors; no reflex side"
            )));
        }
        let (a, b) = self.wrap.edge(edge_pos);
        if v == a || v == b {
            return Ok(Vec::new());
        }
        let visible = visible_intervals(self.ps, &self.wrap, v, edge_pos);
        if visible.is_empty() {
            return Ok(visible);
        }
        let (pa, pb) = (self.ps.point(a), self.ps.point(b));
        match convex_cone_span_on_edge(pv, pu, pw, pa, pb) {
            None => Ok(visible),
            Some((lo, hi)) => Ok(subtract_closed(visible, lo, hi)),
        }
    }

    /// Neighbors of a vertex occurring exactly once.
    fn vertex_neighbors(&self, v: usize) -> Option<(usize, usize)> {
        if self.wrap.occurrence_count(v) != 1 {
            return None;
        }
        let pos = self.wrap.occurrences(v)[0];
        Some(self.wrap.neighbors(pos))
    }

    /// Deterministic stretch target for a forward move: the midpoint of the
    /// longest clearly visible sub-interval on v's reflex side.
    pub fn choose_forward_target(
        &self,
        edge_pos: usize,
        v: usize,
    ) -> Result<RationalPoint, MoveError> {
        let (a, b) = self.wrap.edge(edge_pos);
        if v == a || v == b {
            return Err(MoveError::VisibilityViolated(
                "stretch vertex is an endpoint of the stretch edge".into(),
            ));
        }
        let visible = visible_intervals(self.ps, &self.wrap, v, edge_pos);
        if visible.is_empty() {
            return Err(MoveError::VisibilityViolated(format!(
                "vertex {v} sees no part of the edge at position {edge_pos}"
            )));
        }
        let usable = self.reflex_visible_intervals(edge_pos, v)?;
        let best = usable
            .iter()
            .max_by(|p, q| p.length().cmp(&q.length()))
            .ok_or_else(|| {
                MoveError::ReflexSideViolated(format!(
                    "no clearly visible part of the edge lies on the reflex side of {v}"
                ))
            })?;
        let t = best.midpoint();
        let tb = BigRational::new(BigInt::from(*t.numer()), BigInt::from(*t.denom()));
        Ok(RationalPoint::on_edge(self.ps.point(a), self.ps.point(b), &tb))
    }

    /// True iff ForwardMove(edge, v) is applicable in the current (simple)
    /// state.
    pub fn forward_pair_valid(&self, edge_pos: usize, v: usize) -> bool {
        let (a, b) = self.wrap.edge(edge_pos);
        if v == a || v == b {
            return false;
        }
        match self.reflex_visible_intervals(edge_pos, v) {
            Ok(iv) => !iv.is_empty(),
            Err(_) => false,
        }
    }

    /// Forward move: stretch(e, v), twang v's original occurrence, then
    /// cascade. Maps a polygonization to a polygonization; fully journaled.
    pub fn forward_move(
        &mut self,
        edge_pos: usize,
        v: usize,
        policy: &mut dyn CascadePolicy,
    ) -> Result<&MoveEntry, MoveError> {
        if self.wrap.has_double_contact() {
            return Err(MoveError::InvariantFailure(
                "forward move requires a polygonization".into(),
            ));
        }
        let pos_v = self.wrap.occurrences(v)[0];
        let (u, w) = self.wrap.neighbors(pos_v);
        let x = self.choose_forward_target(edge_pos, v)?;
        self.forward_move_at(edge_pos, v, &x, pos_v, u, w, policy)
    }

    /// Forward move with an explicitly chosen stretch target.
    pub fn forward_move_with_target(
        &mut self,
        edge_pos: usize,
        v: usize,
        x: &RationalPoint,
        policy: &mut dyn CascadePolicy,
    ) -> Result<&MoveEntry, MoveError> {
        if self.wrap.has_double_contact() {
            return Err(MoveError::InvariantFailure(
                "forward move requires a polygonization".into(),
            ));
        }
        let pos_v = self.wrap.occurrences(v)[0];
        let (u, w) = self.wrap.neighbors(pos_v);
        let (pv, pu, pw) = (self.ps.point(v), self.ps.point(u), self.ps.point(w));
        if orient(pu, pv, pw) == Orientation::Collinear {
            return Err(MoveError::ReflexSideViolated(format!(
                "vertex {v} is collinear with its neighbors"
            )));
        }
        self.forward_move_at(edge_pos, v, x, pos_v, u, w, policy)
    }

    #[allow(clippy::too_many_arguments)]
    fn forward_move_at(
        &mut self,
        edge_pos: usize,
        v: usize,
        x: &RationalPoint,
        pos_v: usize,
        u: usize,
        w: usize,
        policy: &mut dyn CascadePolicy,
    ) -> Result<&MoveEntry, MoveError> {
        self.enforce_hull_rule = true;
        let result = self.forward_move_inner(edge_pos, v, x, pos_v, u, w, policy);
        self.enforce_hull_rule = false;
        let entry_index = result?;
        Ok(&self.journal.entries[entry_index])
    }

    #[allow(clippy::too_many_arguments)]
    fn forward_move_inner(
        &mut self,
        edge_pos: usize,
        v: usize,
        x: &RationalPoint,
        pos_v: usize,
        u: usize,
        w: usize,
        policy: &mut dyn CascadePolicy,
    ) -> Result<usize, MoveError> {
        let pre_sigma = self.wrap.sigma().to_vec();
        let mut events = Vec::new();

        let ev = self.stretch(edge_pos, v, x)?;
        let inserted_len = match &ev {
            MoveEvent::Stretch { chain1, chain2, .. } => chain1.len() + 1 + chain2.len(),
            _ => unreachable!(),
        };
        events.push(ev);

        // v's original occurrence, adjusted for the insertion
        let pos_v = if pos_v >= edge_pos + 1 {
            pos_v + inserted_len
        } else {
            pos_v
        };
        debug_assert_eq!(self.wrap.at(pos_v), v);
        debug_assert_eq!(self.wrap.neighbors(pos_v), (u, w));
        events.push(self.twang(pos_v)?);

        let mut cascade = self.twang_cascade(policy)?;
        events.append(&mut cascade);

        if self.check != CheckLevel::Off && !is_simple(self.wrap.sigma(), self.ps) {
            return Err(MoveError::InvariantFailure(
                "forward move did not end in a simple polygonization".into(),
            ));
        }

        let entry = MoveEntry {
            pre_sigma,
            events,
            post_digest: self.digest(),
        };
        self.journal.entries.push(entry);
        Ok(self.journal.entries.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::moves::policy::FifoPolicy;
    use crate::wrap::Polygonization;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn p5() -> PointSet {
        ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 1)])
    }

    fn engine(ps: &PointSet, order: Vec<usize>) -> MoveEngine<'_> {
        let poly = Polygonization::new(order, ps).unwrap();
        MoveEngine::new(ps, poly.into_wrap(), CheckLevel::EveryAtomic)
    }

    #[test]
    fn p5_stretch_creates_double_contact() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        // edge (2,3) at position 3; v = 4; x = midpoint (2,4)
        let x = RationalPoint::new(crate::geom::rat(2, 1), crate::geom::rat(4, 1));
        let ev = eng.stretch(3, 4, &x).unwrap();
        assert_eq!(eng.wrap().sigma(), &[0, 4, 1, 2, 4, 3]);
        assert_eq!(eng.wrap().occurrence_count(4), 2);
        match ev {
            MoveEvent::Stretch { chain1, chain2, .. } => {
                assert!(chain1.is_empty() && chain2.is_empty());
            }
            _ => panic!("expected stretch event"),
        }
    }

    #[test]
    fn stretch_rejects_endpoint_vertex() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let x = RationalPoint::new(crate::geom::rat(2, 1), crate::geom::rat(4, 1));
        assert!(matches!(
            eng.stretch(3, 2, &x),
            Err(MoveError::VisibilityViolated(_))
        ));
    }

    #[test]
    fn p5_twang_restores_polygonization() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let x = RationalPoint::new(crate::geom::rat(2, 1), crate::geom::rat(4, 1));
        eng.stretch(3, 4, &x).unwrap();
        // twang the occurrence of 4 at position 1 (neighbors 0 and 1):
        // triangle (0,0),(3,1),(4,0) is empty, chain is direct
        let ev = eng.twang(1).unwrap();
        assert_eq!(eng.wrap().sigma(), &[0, 1, 2, 4, 3]);
        match ev {
            MoveEvent::Twang { chain, hairpin, .. } => {
                assert_eq!(chain, vec![0, 1]);
                assert!(!hairpin);
            }
            _ => panic!("expected twang event"),
        }
    }

    #[test]
    fn twang_requires_double_contact() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        assert!(eng.twang(1).is_err());
    }

    #[test]
    fn hairpin_twang() {
        let s = ps(&[(0, 0), (4, 0), (2, 3), (2, 1)]);
        let w = Wrap::new(vec![0, 3, 0, 1, 2], &s).unwrap();
        let mut eng = MoveEngine::new(&s, w, CheckLevel::EveryAtomic);
        // occurrence of 3 at position 1 is a hairpin (0,3,0)... its removal
        // would delete the only occurrence of 3, so it must be rejected
        assert!(eng.twang(1).is_err());
        // make 3 doubled first: wrap (0,3,0,1,3,2)? use a different wrap
        let w2 = Wrap::new(vec![0, 3, 0, 1, 3, 2], &s);
        if let Ok(w2) = w2 {
            let mut eng2 = MoveEngine::new(&s, w2, CheckLevel::Off);
            let ev = eng2.twang(1).unwrap();
            assert_eq!(eng2.wrap().sigma(), &[0, 1, 3, 2]);
            match ev {
                MoveEvent::Twang { hairpin, .. } => assert!(hairpin),
                _ => panic!(),
            }
        }
    }

    #[test]
    fn p5_single_step_cascade() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let x = RationalPoint::new(crate::geom::rat(2, 1), crate::geom::rat(4, 1));
        eng.stretch(3, 4, &x).unwrap();
        let mut policy = FifoPolicy::new();
        let events = eng.twang_cascade(&mut policy).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(eng.wrap().sigma(), &[0, 1, 2, 4, 3]);
        assert!(!eng.wrap().has_double_contact());
    }

    #[test]
    fn cascade_identity_on_polygonization() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let mut policy = FifoPolicy::new();
        let events = eng.twang_cascade(&mut policy).unwrap();
        assert!(events.is_empty());
    }

    #[test]
    fn p5_forward_move() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let mut policy = FifoPolicy::new();
        let entry = eng.forward_move(3, 4, &mut policy).unwrap();
        assert_eq!(entry.pre_sigma, vec![0, 4, 1, 2, 3]);
        assert_eq!(entry.twang_count(), 1);
        assert_eq!(eng.wrap().sigma(), &[0, 1, 2, 4, 3]);
    }

    #[test]
    fn forward_move_rejects_collinear_vertex() {
        // vertex 4 collinear with its neighbors on the bottom edge
        let s = ps(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 0)]);
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let mut policy = FifoPolicy::new();
        assert!(matches!(
            eng.forward_move(2, 4, &mut policy),
            Err(MoveError::ReflexSideViolated(_))
        ));
    }

    #[test]
    fn perimeter_decreases_across_cascade() {
        let s = p5();
        let mut eng = engine(&s, vec![0, 4, 1, 2, 3]);
        let x = RationalPoint::new(crate::geom::rat(2, 1), crate::geom::rat(4, 1));
        let before = eng.wrap().perimeter(&s);
        eng.stretch(3, 4, &x).unwrap();
        let stretched = eng.wrap().perimeter(&s);
        assert!(stretched > before);
        let mut policy = FifoPolicy::new();
        eng.twang_cascade(&mut policy).unwrap();
        let after = eng.wrap().perimeter(&s);
        assert!(after < stretched);
    }
}
