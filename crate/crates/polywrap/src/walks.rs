//! Random walks over polygonization space by forward moves, with cascade
//! statistics.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geom::PointSet;
use crate::moves::{CascadePolicy, MoveEngine, MoveError};
use crate::observe::CheckLevel;
use crate::wrap::{is_simple, Polygonization};

/// Statistics of one walk: per-move cascade lengths (twangs per forward
/// move, including the move's initial twang).
#[derive(Debug, Clone, Serialize)]
pub struct WalkStats {
    pub moves: usize,
    pub total_twangs: usize,
    pub cascade_lengths: Vec<usize>,
    pub mean_cascade: f64,
    pub max_cascade: usize,
    /// Histogram of cascade lengths (index = length).
    pub histogram: Vec<usize>,
}

impl WalkStats {
    fn from_lengths(cascade_lengths: Vec<usize>) -> Self {
        let moves = cascade_lengths.len();
        let total: usize = cascade_lengths.iter().sum();
        let max = cascade_lengths.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0usize; max + 1];
        for &l in &cascade_lengths {
            histogram[l] += 1;
        }
        WalkStats {
            moves,
            total_twangs: total,
            mean_cascade: if moves == 0 { 0.0 } else { total as f64 / moves as f64 },
            max_cascade: max,
            cascade_lengths,
            histogram,
        }
    }
}

/// Walk configuration beyond the seed: optional seeded stretch injections
/// between cascade steps (off by default).
#[derive(Debug, Clone, Copy, Default)]
pub struct WalkOptions {
    pub inject_stretches: bool,
}

/// Run `steps` forward moves from `start`, choosing uniformly among valid
/// (edge, vertex) stretch pairs via rejection sampling under a seeded
/// generator. Returns the stats and leaves the engine's journal intact for
/// reversal checks.
pub fn random_walk<'a>(
    ps: &'a PointSet,
    start: Polygonization,
    steps: usize,
    seed: u64,
    policy: &mut dyn CascadePolicy,
    check: CheckLevel,
    options: WalkOptions,
) -> Result<(MoveEngine<'a>, WalkStats), MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut engine = MoveEngine::new(ps, start.into_wrap(), check);
    let m = ps.len();
    let mut lengths = Vec::with_capacity(steps);

    for _ in 0..steps {
        // uniform over valid pairs by rejection; the proposal space is all
        // (edge position, vertex) pairs
        let (edge_pos, v) = loop {
            let pos = rng.gen_range(0..m);
            let v = rng.gen_range(0..m);
            let (a, b) = engine.wrap().edge(pos);
            if v == a || v == b {
                continue;
            }
            if engine.forward_pair_valid(pos, v) {
                break (pos, v);
            }
        };
        if options.inject_stretches {
            // occasionally pre-stretch a random valid pair (not restricted
            // to the reflex side), simulating reverse-move stretches inside
            // the cascade; the forward move then proceeds from the wrap
            if rng.gen_bool(0.25) {
                inject_stretch(&mut engine, &mut rng)?;
                // run the cascade to return to a polygonization, counting it
                // as part of this step's cascade
                let evs = engine.twang_cascade(policy)?;
                lengths.push(evs.len());
                if check != CheckLevel::Off {
                    debug_assert!(is_simple(engine.wrap().sigma(), ps));
                }
                continue;
            }
        }
        let entry = engine.forward_move(edge_pos, v, policy)?;
        lengths.push(entry.twang_count());
    }
    Ok((engine, WalkStats::from_lengths(lengths)))
}

/// Pick any clearly visible (edge, vertex, x) and stretch, regardless of
/// reflex side.
fn inject_stretch(engine: &mut MoveEngine<'_>, rng: &mut ChaCha8Rng) -> Result<(), MoveError> {
    let m = engine.wrap().len();
    loop {
        let pos = rng.gen_range(0..m);
        let v = rng.gen_range(0..engine.points().len());
        let (a, b) = engine.wrap().edge(pos);
        if v == a || v == b {
            continue;
        }
        let intervals =
            crate::geom::visible_intervals(engine.points(), engine.wrap(), v, pos);
        let best = match intervals.iter().max_by(|p, q| p.length().cmp(&q.length())) {
            Some(iv) => iv.clone(),
            None => continue,
        };
        let t = best.midpoint();
        let tb = num_rational::BigRational::new(
            num_bigint::BigInt::from(*t.numer()),
            num_bigint::BigInt::from(*t.denom()),
        );
        let x = crate::geom::RationalPoint::on_edge(
            engine.points().point(a),
            engine.points().point(b),
            &tb,
        );
        engine.stretch(pos, v, &x)?;
        return Ok(());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{initial_polygonization, random_points};
    use crate::moves::FifoPolicy;
    use crate::transforms::lowest_hull_edge;

    #[test]
    fn walk_is_deterministic() {
        let ps = random_points(12, 5, 200, true);
        let e = lowest_hull_edge(&ps);
        let start = initial_polygonization(&ps, e);
        let mut p1 = FifoPolicy::new();
        let (_, s1) = random_walk(
            &ps,
            start.clone(),
            20,
            7,
            &mut p1,
            CheckLevel::EveryAtomic,
            WalkOptions::default(),
        )
        .unwrap();
        let mut p2 = FifoPolicy::new();
        let (_, s2) = random_walk(
            &ps,
            start,
            20,
            7,
            &mut p2,
            CheckLevel::EveryAtomic,
            WalkOptions::default(),
        )
        .unwrap();
        assert_eq!(s1.cascade_lengths, s2.cascade_lengths);
    }

    #[test]
    fn single_step_walk_journals_one_move() {
        let ps = random_points(10, 3, 100, true);
        let e = lowest_hull_edge(&ps);
        let start = initial_polygonization(&ps, e);
        let mut policy = FifoPolicy::new();
        let (engine, stats) = random_walk(
            &ps,
            start,
            1,
            1,
            &mut policy,
            CheckLevel::EveryAtomic,
            WalkOptions::default(),
        )
        .unwrap();
        assert_eq!(stats.moves, 1);
        assert_eq!(engine.journal().moves(), 1);
    }

    #[test]
    fn injected_stretches_stay_weakly_simple() {
        let ps = random_points(12, 11, 300, true);
        let e = lowest_hull_edge(&ps);
        let start = initial_polygonization(&ps, e);
        let mut policy = FifoPolicy::new();
        let (engine, stats) = random_walk(
            &ps,
            start,
            15,
            2,
            &mut policy,
            CheckLevel::EveryAtomic,
            WalkOptions {
                inject_stretches: true,
            },
        )
        .unwrap();
        assert_eq!(stats.moves, 15);
        assert!(is_simple(engine.wrap().sigma(), &ps));
    }
}
