//! Named instance families behind a common generator trait, registered by
//! name and selected at runtime.

use serde::Serialize;
use thiserror::Error;

use crate::geom::{Point, PointSet};
use crate::wrap::is_simple;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
}

/// Parameters accepted by every family generator.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySpec {
    pub family: String,
    /// Gadget count for pow2k, total points otherwise.
    pub size: usize,
    pub seed: u64,
    pub scale: i64,
}

/// A generated instance: the point set plus whatever structure the family
/// defines (an initial polygonization, a designated stretch pair, lids).
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub points: PointSet,
    pub order: Option<Vec<usize>>,
    pub stretch_edge: Option<(usize, usize)>,
    pub stretch_vertex: Option<usize>,
    pub lids: Vec<(usize, usize)>,
    pub target_edge: Option<(usize, usize)>,
}

/// An instance family: a named, deterministic generator.
pub trait InstanceFamily {
    fn name(&self) -> &'static str;
    fn generate(&self, spec: &FamilySpec) -> Result<GeneratedInstance, GenError>;
}

struct Pow2kFamily;
struct QuadCascadeFamily;
struct PocketChainFamily;
struct RandomFamily;

impl InstanceFamily for Pow2kFamily {
    fn name(&self) -> &'static str {
        "pow2k"
    }

    fn generate(&self, spec: &FamilySpec) -> Result<GeneratedInstance, GenError> {
        let ps = gen_pow2k(spec.size)?;
        Ok(GeneratedInstance {
            points: ps,
            order: None,
            stretch_edge: None,
            stretch_vertex: None,
            lids: Vec::new(),
            target_edge: None,
        })
    }
}

impl InstanceFamily for QuadCascadeFamily {
    fn name(&self) -> &'static str {
        "quad-cascade"
    }

    fn generate(&self, spec: &FamilySpec) -> Result<GeneratedInstance, GenError> {
        let inst = gen_quadratic_cascade(spec.size)?;
        Ok(GeneratedInstance {
            points: inst.points,
            order: Some(inst.order),
            stretch_edge: Some(inst.stretch_edge),
            stretch_vertex: Some(inst.stretch_vertex),
            lids: Vec::new(),
            target_edge: None,
        })
    }
}

impl InstanceFamily for PocketChainFamily {
    fn name(&self) -> &'static str {
        "pocket-chain"
    }

    fn generate(&self, spec: &FamilySpec) -> Result<GeneratedInstance, GenError> {
        let pockets = spec.size;
        let inst = gen_pocket_chain(pockets, 3)?;
        Ok(GeneratedInstance {
            points: inst.points,
            order: Some(inst.order),
            stretch_edge: None,
            stretch_vertex: None,
            lids: inst.lids,
            target_edge: Some(inst.target_edge),
        })
    }
}

impl InstanceFamily for RandomFamily {
    fn name(&self) -> &'static str {
        "random"
    }

    fn generate(&self, spec: &FamilySpec) -> Result<GeneratedInstance, GenError> {
        if spec.size < 3 {
            return Err(GenError::BadParams("random family needs n >= 3".into()));
        }
        let ps = super::random_points(spec.size, spec.seed, spec.scale.max(4), true);
        Ok(GeneratedInstance {
            points: ps,
            order: None,
            stretch_edge: None,
            stretch_vertex: None,
            lids: Vec::new(),
            target_edge: None,
        })
    }
}

/// Construct a family generator by registered name. "pinwheel" is the
/// circle construction behind the quadratic-cascade family and shares its
/// generator.
pub fn make_family(name: &str) -> Option<Box<dyn InstanceFamily>> {
    match name {
        "pow2k" => Some(Box::new(Pow2kFamily)),
        "quad-cascade" | "pinwheel" => Some(Box::new(QuadCascadeFamily)),
        "pocket-chain" => Some(Box::new(PocketChainFamily)),
        "random" => Some(Box::new(RandomFamily)),
        _ => None,
    }
}

pub fn family_names() -> &'static [&'static str] {
    &["pow2k", "quad-cascade", "pinwheel", "pocket-chain", "random"]
}

/// A point set of 3k + 2 points (two anchors plus k three-point gadgets)
/// admitting exactly 2^k polygonizations: each gadget's middle point can
/// join the boundary on exactly two routes, independently.
pub fn gen_pow2k(k: usize) -> Result<PointSet, GenError> {
    if k < 1 {
        return Err(GenError::BadParams("pow2k needs k >= 1".into()));
    }
    let mut pts: Vec<Point> = Vec::with_capacity(3 * k + 2);
    let w = 8 * k as i64 + 8;
    pts.push(Point::new(0, 0)); // left anchor
    pts.push(Point::new(w, 0)); // right anchor
    for i in 0..k as i64 {
        let x = 8 * i;
        pts.push(Point::new(x + 4, 2)); // top
        pts.push(Point::new(x + 6, 1)); // middle (the free point)
        pts.push(Point::new(x + 8, -2)); // bottom
    }
    PointSet::new(pts).map_err(|e| GenError::GenerationFailed(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct QuadCascadeInstance {
    pub points: PointSet,
    pub order: Vec<usize>,
    pub stretch_edge: (usize, usize),
    pub stretch_vertex: usize,
}

/// Cascade-stress instance: a chain of wide V-shaped arms whose tips sit on
/// a strictly convex, leftward-descending arc, anchored far above so every
/// arm's triangle contains the tips above its own. Releasing the deepest
/// tip captures the next one, whose release captures the next, so the
/// initiating forward move runs a cascade through every arm.
pub fn gen_quadratic_cascade(n: usize) -> Result<QuadCascadeInstance, GenError> {
    gen_quadratic_cascade_scaled(n, 1)
}

/// Scale multiplier variant: callers increase `scale` if grid snapping at
/// the default scale breaks the required pattern.
pub fn gen_quadratic_cascade_scaled(n: usize, scale: i64) -> Result<QuadCascadeInstance, GenError> {
    if n < 12 {
        return Err(GenError::BadParams("quad-cascade needs n >= 12".into()));
    }
    if !(1..=8).contains(&scale) {
        return Err(GenError::BadParams("scale must be in 1..=8".into()));
    }
    let s = scale;
    let g = ((n - 3) / 3) as i64;
    let pads = (n - 3 - 3 * g as usize) as i64;

    // arm tips on a strictly convex, leftward-descending arc: every arm's
    // release chain is the full sub-arc of shallower tips, so each of them
    // re-enters double contact once per release
    let tip = |k: i64| Point::new(-600 * s * k, (8900 - 300 * k + 3 * k * k) * s);
    // anchors fan outward and upward as the arm gets shallower, so the legs
    // nest and chain ends slide under every cone boundary
    let anchor_l = |k: i64| {
        Point::new(
            (-500_000 - 1500 * (g - k + 1)) * s,
            (120_000 + 1500 * (g - k + 1)) * s,
        )
    };
    let anchor_r = |k: i64| {
        Point::new(
            (500_000 + 1500 * (g - k + 1)) * s,
            (120_000 + 1500 * (g - k + 1)) * s,
        )
    };

    let mut pts: Vec<Point> = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    let push = |pts: &mut Vec<Point>, order: &mut Vec<usize>, p: Point| {
        order.push(pts.len());
        pts.push(p);
    };

    // arm block, shallowest first, serpentine; the start side is chosen so
    // the block ends at the innermost right anchor next to the frame exit
    let mut on_left = g % 2 == 1;
    for k in 1..=g {
        if on_left {
            push(&mut pts, &mut order, anchor_l(k));
            push(&mut pts, &mut order, tip(k));
            push(&mut pts, &mut order, anchor_r(k));
        } else {
            push(&mut pts, &mut order, anchor_r(k));
            push(&mut pts, &mut order, tip(k));
            push(&mut pts, &mut order, anchor_l(k));
        }
        on_left = !on_left;
    }
    // frame: down to the floor, across (with spare points spent as floor
    // subdivisions), then up the left wall and back to the first anchor;
    // the floor is the ignition's stretch edge, visible below the deepest
    // tip
    push(&mut pts, &mut order, Point::new(770_000 * s, -30_000 * s));
    for t in 0..pads {
        push(
            &mut pts,
            &mut order,
            Point::new((200_000 - 150_000 * t) * s, (-30_000 - 10 * t) * s),
        );
    }
    push(&mut pts, &mut order, Point::new(-770_000 * s, -30_000 * s));
    push(&mut pts, &mut order, Point::new(-770_000 * s, 400_000 * s));

    let ps = PointSet::new(pts).map_err(|e| GenError::GenerationFailed(e.to_string()))?;
    if let Some(defect) = crate::wrap::simplicity_defect(&order, &ps) {
        return Err(GenError::GenerationFailed(format!(
            "cascade polygon is not simple: {defect}"
        )));
    }

    // initiating pair: the deepest arm's tip, stretched into the first edge
    // it clearly sees on its reflex side (the floor below it)
    let tip_index = order[3 * (g as usize - 1) + 1];
    let wrap = crate::wrap::Wrap::new(order.clone(), &ps)
        .map_err(|e| GenError::GenerationFailed(e.to_string()))?;
    let engine = crate::moves::MoveEngine::new(&ps, wrap, crate::observe::CheckLevel::Off);
    let stretch_edge = (0..order.len())
        .find(|&pos| engine.forward_pair_valid(pos, tip_index))
        .map(|pos| engine.wrap().edge(pos))
        .ok_or_else(|| GenError::GenerationFailed("no valid initiating stretch pair".into()))?;

    Ok(QuadCascadeInstance {
        points: ps,
        order,
        stretch_edge,
        stretch_vertex: tip_index,
    })
}

#[derive(Debug, Clone)]
pub struct PocketChainInstance {
    pub points: PointSet,
    pub order: Vec<usize>,
    /// Pocket lids, in reduction order.
    pub lids: Vec<(usize, usize)>,
    /// Degenerate target edge.
    pub target_edge: (usize, usize),
}

/// A polygonization with `m` pockets of `r` non-lid vertices each plus a
/// degenerate target edge, arranged so each single pocket reduction shifts
/// all vertices into the next pocket. Pocket lids are disjoint hull edges
/// along a gently arched top; n = 2 + 2m + m r.
pub fn gen_pocket_chain(m: usize, r: usize) -> Result<PocketChainInstance, GenError> {
    if m < 2 {
        return Err(GenError::BadParams("pocket chain needs m >= 2 pockets".into()));
    }
    if r < 1 {
        return Err(GenError::BadParams("pocket chain needs r >= 1".into()));
    }
    let m_i = m as i64;
    let r_i = r as i64;
    let inner = (r_i + 1) * 4; // lid width
    let gap = 4;
    let span = inner + gap;
    let width = m_i * span + 4 + gap;
    let depth = 6;
    let height = 40;

    let mut pts: Vec<Point> = Vec::new();
    let mut lids = Vec::new();

    // bottom target edge (t1, t2)
    let t2 = 0usize;
    pts.push(Point::new(0, 0));
    let t1 = 1usize;
    pts.push(Point::new(width, 0));

    // top corners walk left to right with strictly decreasing integer
    // slopes, so every lid corner is a hull corner and every lid a hull
    // edge; pocket vertices sit on a convex-down arc strictly below
    let mut ys = Vec::new();
    let mut y = height;
    for j in 0..(2 * m_i - 1) {
        ys.push(y);
        let slope = m_i - 1 - j;
        let dx = if j % 2 == 0 { inner } else { gap };
        y += slope * dx;
    }
    ys.push(y);
    debug_assert_eq!(*ys.last().unwrap(), height);

    let mut lid_corners = Vec::new();
    let mut pocket_verts: Vec<Vec<usize>> = Vec::new();
    for i in 0..m_i {
        let x0 = 4 + i * span;
        let li = pts.len();
        pts.push(Point::new(x0, ys[(2 * i) as usize]));
        let ri = pts.len();
        pts.push(Point::new(x0 + inner, ys[(2 * i + 1) as usize]));
        lid_corners.push((li, ri));
        let mut verts = Vec::new();
        for q in 1..=r_i {
            let x = x0 + q * 4 - 1;
            let sag = depth + bump(q, r_i);
            verts.push(pts.len());
            pts.push(Point::new(x, height - sag));
        }
        pocket_verts.push(verts);
        lids.push((li, ri));
    }

    // boundary: t2, up the left side, across the top dipping through each
    // pocket, down to t1; the bottom edge closes it
    let mut order = Vec::with_capacity(pts.len());
    order.push(t2);
    for i in 0..m {
        order.push(lid_corners[i].0);
        for &v in &pocket_verts[i] {
            order.push(v);
        }
        order.push(lid_corners[i].1);
    }
    order.push(t1);

    let ps = PointSet::new(pts).map_err(|e| GenError::GenerationFailed(e.to_string()))?;
    if !is_simple(&order, &ps) {
        return Err(GenError::GenerationFailed(
            "pocket chain polygon is not simple".into(),
        ));
    }
    Ok(PocketChainInstance {
        points: ps,
        order,
        lids,
        target_edge: (t1, t2),
    })
}



/// Convex-down sag profile for pocket vertices so each is a strict corner of
/// its pocket hull.
fn bump(q: i64, r: i64) -> i64 {
    q * (r + 1 - q)
}


#[cfg(test)]
mod cascade_tests {
    use super::*;
    use crate::moves::{FifoPolicy, MoveEngine};
    use crate::observe::CheckLevel;
    use crate::wrap::Polygonization;

    #[test]
    fn quad_cascade_instances_run() {
        for n in [16usize, 24, 32] {
            let inst = gen_quadratic_cascade(n).unwrap();
            assert_eq!(inst.points.len(), n);
            let p = Polygonization::new(inst.order.clone(), &inst.points).unwrap();
            let mut eng = MoveEngine::new(&inst.points, p.into_wrap(), CheckLevel::EveryAtomic);
            let pos = (0..eng.wrap().len())
                .find(|&q| {
                    let (u, w) = eng.wrap().edge(q);
                    (u, w) == inst.stretch_edge || (w, u) == inst.stretch_edge
                })
                .expect("stretch edge present");
            let mut policy = FifoPolicy::new();
            let entry = eng.forward_move(pos, inst.stretch_vertex, &mut policy).unwrap();
            // the domino releases every arm
            assert!(entry.twang_count() >= (n - 3) / 3, "cascade too short");
        }
    }

    #[test]
    fn quad_cascade_rejects_small_n() {
        assert!(gen_quadratic_cascade(11).is_err());
    }
}
