//! Exact reversal of journaled moves via atomic stretches and twangs.
//!
//! A stretch is undone by twangs only (the funnel it created is empty, so
//! they do not cascade); a twang is undone by one stretch of the twang
//! vertex into an edge of the recorded chain followed by twangs of the
//! residual chain vertices, peeled adjacent to the restored vertex so each
//! twang triangle lies in the empty wedge. All splices stay confined to the
//! run between the recorded anchors, so emptying the run restores the
//! pre-state exactly; recorded digests verify every step.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::geom::{sp_chain_points, visible_intervals, RationalPoint};

use super::engine::{MoveEngine, MoveError};
use super::journal::{MoveEntry, MoveEvent};

/// Tracks the run of inserted occurrences between two fixed anchor
/// occurrences while twangs shrink it. The anchor is a vector index kept in
/// sync with every splice; run slots are cyclic offsets after it.
struct Run {
    anchor: usize,
    len: usize,
}

impl Run {
    fn pos(&self, slot: usize, m: usize) -> usize {
        (self.anchor + 1 + slot) % m
    }

    /// Update for a twang applied at vector position `p` (a slot of this
    /// run). `inserted` is the number of chain vertices spliced in.
    fn on_twang(&mut self, p: usize, m_before: usize, hairpin: bool, inserted: usize) {
        if hairpin {
            let drop2 = (p + 1) % m_before;
            if drop2 == 0 {
                self.anchor -= 1;
            } else if self.anchor > p + 1 {
                self.anchor -= 2;
            }
            self.len -= 2;
        } else {
            if self.anchor > p {
                self.anchor = self.anchor + inserted - 1;
            }
            self.len = self.len + inserted - 1;
        }
    }
}

/// Undo a STRETCH event: twang the stretch vertex first, then the residual
/// inserted chain vertices, until the inserted run is gone.
pub fn reverse_stretch(
    engine: &mut MoveEngine<'_>,
    ev: &MoveEvent,
) -> Result<Vec<MoveEvent>, MoveError> {
    let (edge_pos, a, b, v, chain1, chain2, pre_digest, post_digest) = match ev {
        MoveEvent::Stretch {
            edge_pos,
            a,
            b,
            v,
            chain1,
            chain2,
            pre_digest,
            post_digest,
            ..
        } => (*edge_pos, *a, *b, *v, chain1, chain2, *pre_digest, *post_digest),
        _ => {
            return Err(MoveError::ReversalMismatch(
                "reverse_stretch applied to a twang event".into(),
            ))
        }
    };
    if engine.digest() != post_digest {
        return Err(MoveError::ReversalMismatch(
            "wrap is not the post-state of the stretch being reversed".into(),
        ));
    }

    if a == b {
        // zero-length stretch (hairpin reversal): undo it as the hairpin
        // twang of v at its recorded index
        let ev = engine.twang(edge_pos)?;
        if engine.digest() != pre_digest {
            return Err(MoveError::ReversalMismatch(
                "hairpin re-twang did not restore the pre-state".into(),
            ));
        }
        return Ok(vec![ev]);
    }

    let run = Run {
        anchor: edge_pos,
        len: chain1.len() + 1 + chain2.len(),
    };
    let m = engine.wrap().len();
    if engine.wrap().at(run.anchor) != a || engine.wrap().at(run.pos(run.len, m)) != b {
        return Err(MoveError::ReversalMismatch(format!(
            "stretch anchors ({a},{b}) not found around the inserted run"
        )));
    }
    let v_slot = chain1.len();
    if engine.wrap().at(run.pos(v_slot, m)) != v {
        return Err(MoveError::ReversalMismatch(format!(
            "stretch vertex {v} not found inside the inserted run"
        )));
    }

    let events = unwind(engine, run, UnwindGoal::Empty, Some(v_slot))?;

    if engine.digest() != pre_digest {
        return Err(MoveError::ReversalMismatch(
            "reversed stretch did not restore the recorded pre-state".into(),
        ));
    }
    Ok(events)
}

/// Undo a TWANG event: stretch the twang vertex back into a chain edge it
/// clearly sees, then twang the residual chain vertices.
pub fn reverse_twang(
    engine: &mut MoveEngine<'_>,
    ev: &MoveEvent,
) -> Result<Vec<MoveEvent>, MoveError> {
    let (pos, a, b, c, chain, hairpin, pre_digest, post_digest) = match ev {
        MoveEvent::Twang {
            pos,
            a,
            b,
            c,
            chain,
            hairpin,
            pre_digest,
            post_digest,
        } => (*pos, *a, *b, *c, chain, *hairpin, *pre_digest, *post_digest),
        _ => {
            return Err(MoveError::ReversalMismatch(
                "reverse_twang applied to a stretch event".into(),
            ))
        }
    };
    let _ = c;
    if engine.digest() != post_digest {
        return Err(MoveError::ReversalMismatch(
            "wrap is not the post-state of the twang being reversed".into(),
        ));
    }

    if hairpin {
        // ac is an edge of length zero; the reverse is a single degenerate
        // stretch re-inserting the spike at its recorded index
        let ev = engine.zero_length_stretch(pos, a, b)?;
        if engine.digest() != pre_digest {
            return Err(MoveError::ReversalMismatch(
                "hairpin reversal did not restore the pre-state".into(),
            ));
        }
        return Ok(vec![ev]);
    }

    let m = engine.wrap().len();
    let mut run = Run {
        anchor: if pos == 0 { m - 1 } else { pos - 1 },
        len: chain.len() - 2,
    };
    for (k, &ci) in chain.iter().enumerate() {
        let p = (run.anchor + k) % m;
        if engine.wrap().at(p) != ci {
            return Err(MoveError::ReversalMismatch(format!(
                "recorded chain vertex {ci} not found at its expected position"
            )));
        }
    }

    // stretch b back into the first chain edge it clearly sees; the stretch
    // is not restricted to the reflex side
    let mut events = Vec::new();
    let mut b_slot = None;
    for j in 0..chain.len() - 1 {
        let edge_pos = (run.anchor + j) % m;
        let iv = visible_intervals(engine.points(), engine.wrap(), b, edge_pos);
        let best = match iv.iter().max_by(|p, q| p.length().cmp(&q.length())) {
            Some(best) => best.clone(),
            None => continue,
        };
        let t = best.midpoint();
        let tb = BigRational::new(BigInt::from(*t.numer()), BigInt::from(*t.denom()));
        let (ia, ib) = engine.wrap().edge(edge_pos);
        let x = RationalPoint::on_edge(engine.points().point(ia), engine.points().point(ib), &tb);
        let sev = engine.stretch(edge_pos, b, &x)?;
        let (c1, c2) = match &sev {
            MoveEvent::Stretch { chain1, chain2, .. } => (chain1.len(), chain2.len()),
            _ => unreachable!(),
        };
        let inserted = c1 + 1 + c2;
        if run.anchor >= edge_pos + 1 {
            run.anchor += inserted;
        }
        run.len += inserted;
        b_slot = Some(j + c1);
        events.push(sev);
        break;
    }
    let b_slot = b_slot.ok_or_else(|| {
        MoveError::ReversalMismatch(format!("twang vertex {b} sees no edge of its chain"))
    })?;
    debug_assert_eq!(engine.wrap().at(run.pos(b_slot, engine.wrap().len())), b);

    let mut evs = unwind(engine, run, UnwindGoal::Single, Some(b_slot))?;
    events.append(&mut evs);

    if engine.digest() != pre_digest {
        return Err(MoveError::ReversalMismatch(
            "reversed twang did not restore the recorded pre-state".into(),
        ));
    }
    Ok(events)
}

/// Undo a whole journaled move: reverse each atomic event in reverse order,
/// then require exact equality with the recorded pre-state.
pub fn reverse_move(
    engine: &mut MoveEngine<'_>,
    entry: &MoveEntry,
) -> Result<Vec<MoveEvent>, MoveError> {
    let mut events = Vec::new();
    for ev in entry.events.iter().rev() {
        let mut evs = match ev {
            MoveEvent::Stretch { .. } => reverse_stretch(engine, ev)?,
            MoveEvent::Twang { .. } => reverse_twang(engine, ev)?,
        };
        events.append(&mut evs);
    }
    if engine.wrap().sigma() != entry.pre_sigma.as_slice() {
        return Err(MoveError::ReversalMismatch(
            "reverse move did not restore the exact pre-state sigma".into(),
        ));
    }
    Ok(events)
}

enum UnwindGoal {
    /// Remove every run occurrence (reverse stretch).
    Empty,
    /// Keep exactly the protected occurrence (reverse twang).
    Single,
}

/// Twang run occurrences until the goal size is reached. The protected slot
/// (the re-inserted vertex) is tried first when the goal is Empty, never
/// twanged when the goal is Single. Candidates whose capture is empty are
/// preferred, so in regular geometry no twang here cascades.
fn unwind(
    engine: &mut MoveEngine<'_>,
    mut run: Run,
    goal: UnwindGoal,
    protect: Option<usize>,
) -> Result<Vec<MoveEvent>, MoveError> {
    let mut events = Vec::new();
    let mut protect = protect;
    let target = match goal {
        UnwindGoal::Empty => 0,
        UnwindGoal::Single => 1,
    };
    let cap = engine.points().len().pow(4).max(4096);

    if matches!(goal, UnwindGoal::Empty) {
        // the stretch vertex goes first, mirroring the construction
        if let Some(v_slot) = protect.take() {
            let m = engine.wrap().len();
            let p = run.pos(v_slot, m);
            if engine.twang_preconditions(p).is_ok() {
                if let Some(ev) = try_twang(engine, &mut run, p, None)? {
                    events.push(ev);
                }
            }
        }
    }

    while run.len > target {
        if events.len() > cap {
            return Err(MoveError::ReversalMismatch(
                "reverse unwind exceeded the twang cap".into(),
            ));
        }
        let m = engine.wrap().len();
        let mut order: Vec<usize> = Vec::new();
        if let Some(kb) = protect {
            if kb > 0 {
                order.push(kb - 1);
            }
            if kb + 1 < run.len {
                order.push(kb + 1);
            }
        }
        for k in 0..run.len {
            if Some(k) != protect && !order.contains(&k) {
                order.push(k);
            }
        }

        let mut twanged = false;
        'passes: for pass in 0..2 {
            for &k in &order {
                if Some(k) == protect {
                    continue;
                }
                let p = run.pos(k, m);
                if engine.twang_preconditions(p).is_err() {
                    continue;
                }
                if pass == 0 && !capture_is_empty(engine, p) {
                    continue;
                }
                // a hairpin here also removes the following occurrence; it
                // must be a run slot and not the protected vertex
                let (na, nc) = engine.wrap().neighbors(p);
                if na == nc {
                    let dup_slot = k + 1;
                    if dup_slot >= run.len || Some(dup_slot) == protect {
                        continue;
                    }
                }
                if let Some(ev) = try_twang(engine, &mut run, p, protect.as_mut())? {
                    events.push(ev);
                    twanged = true;
                    break 'passes;
                }
            }
        }
        if !twanged {
            return Err(MoveError::ReversalMismatch(
                "reverse unwind is stuck: no twangable occurrence in the run".into(),
            ));
        }
    }
    Ok(events)
}

fn try_twang(
    engine: &mut MoveEngine<'_>,
    run: &mut Run,
    p: usize,
    protect: Option<&mut usize>,
) -> Result<Option<MoveEvent>, MoveError> {
    let m_before = engine.wrap().len();
    let slot = (p + m_before - (run.anchor + 1)) % m_before;
    let ev = engine.twang(p)?;
    let (hairpin, inserted) = match &ev {
        MoveEvent::Twang { hairpin, chain, .. } => (*hairpin, if *hairpin { 0 } else { chain.len() - 2 }),
        _ => unreachable!(),
    };
    run.on_twang(p, m_before, hairpin, inserted);
    if let Some(kb) = protect {
        if *kb > slot {
            if hairpin {
                *kb -= 2;
            } else {
                *kb = *kb + inserted - 1;
            }
        }
    }
    Ok(Some(ev))
}

fn capture_is_empty(engine: &MoveEngine<'_>, pos: usize) -> bool {
    let b = engine.wrap().at(pos);
    let (a, c) = engine.wrap().neighbors(pos);
    if a == c {
        return true;
    }
    match sp_chain_points(engine.points(), a, b, c) {
        Ok(chain) => chain.len() == 2,
        Err(_) => false,
    }
}
