//! JSON file formats and the replayable JSONL trace of atomic moves.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point, PointSet, RationalPoint};
use crate::moves::{sigma_digest, MoveEvent};
use crate::wrap::Wrap;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}

/// Point set file: {"points": [[x, y], ...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetFile {
    pub points: Vec<[i64; 2]>,
}

impl PointSetFile {
    pub fn from_set(ps: &PointSet) -> Self {
        PointSetFile {
            points: ps.points().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn into_set(self) -> Result<PointSet, IoError> {
        PointSet::new(self.points.into_iter().map(|[x, y]| Point::new(x, y)).collect())
            .map_err(|e| IoError::Parse(e.to_string()))
    }
}

/// Polygonization file: {"order": [i, ...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonizationFile {
    pub order: Vec<usize>,
}

/// Wrap file: {"sigma": [i, ...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WrapFile {
    pub sigma: Vec<usize>,
}

/// One trace line. `pos` pins the occurrence so replay is bit-exact even
/// with doubled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Stretch {
        edge: [usize; 2],
        pos: usize,
        v: usize,
        /// x as (x numerator, x denominator, y numerator, y denominator).
        x: [i128; 4],
        chains: [Vec<usize>; 2],
    },
    Twang {
        a: usize,
        b: usize,
        c: usize,
        pos: usize,
        chain: Vec<usize>,
        hairpin: bool,
    },
}

// The trace format tags lines with "op" and keeps the rational stretch
// target as a numeric quad. Internally tagged serde enums buffer through an
// intermediate representation without i128 support, so the (de)serializers
// are written out by hand against serde_json values.
impl Serialize for TraceEvent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            TraceEvent::Stretch {
                edge,
                pos,
                v,
                x,
                chains,
            } => {
                let mut map = serializer.serialize_map(Some(6))?;
                map.serialize_entry("op", "stretch")?;
                map.serialize_entry("edge", edge)?;
                map.serialize_entry("pos", pos)?;
                map.serialize_entry("v", v)?;
                map.serialize_entry("x", x)?;
                map.serialize_entry("chains", chains)?;
                map.end()
            }
            TraceEvent::Twang {
                a,
                b,
                c,
                pos,
                chain,
                hairpin,
            } => {
                let mut map = serializer.serialize_map(Some(7))?;
                map.serialize_entry("op", "twang")?;
                map.serialize_entry("a", a)?;
                map.serialize_entry("b", b)?;
                map.serialize_entry("c", c)?;
                map.serialize_entry("pos", pos)?;
                map.serialize_entry("chain", chain)?;
                map.serialize_entry("hairpin", hairpin)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for TraceEvent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(deserializer)?;
        let obj = value
            .as_object()
            .ok_or_else(|| D::Error::custom("trace event must be an object"))?;
        let op = obj
            .get("op")
            .and_then(|v| v.as_str())
            .ok_or_else(|| D::Error::custom("missing op tag"))?;
        let get = |key: &str| {
            obj.get(key)
                .cloned()
                .ok_or_else(|| D::Error::custom(format!("missing field {key}")))
        };
        let usize_of = |v: serde_json::Value| -> Result<usize, D::Error> {
            v.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| D::Error::custom("expected an index"))
        };
        let vec_of = |v: serde_json::Value| -> Result<Vec<usize>, D::Error> {
            v.as_array()
                .ok_or_else(|| D::Error::custom("expected an array"))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| D::Error::custom("expected an index"))
                })
                .collect()
        };
        match op {
            "stretch" => {
                let edge_v = vec_of(get("edge")?)?;
                if edge_v.len() != 2 {
                    return Err(D::Error::custom("edge must have two entries"));
                }
                let x_v = get("x")?;
                let xa = x_v
                    .as_array()
                    .ok_or_else(|| D::Error::custom("x must be an array"))?;
                if xa.len() != 4 {
                    return Err(D::Error::custom("x must have four entries"));
                }
                let mut x = [0i128; 4];
                for (k, e) in xa.iter().enumerate() {
                    // arbitrary-precision numbers round-trip through their
                    // textual form
                    let text = match e {
                        serde_json::Value::Number(n) => n.to_string(),
                        _ => return Err(D::Error::custom("x entries must be numbers")),
                    };
                    x[k] = text
                        .parse::<i128>()
                        .map_err(|_| D::Error::custom("x entry out of range"))?;
                }
                let chains_v = get("chains")?;
                let ca = chains_v
                    .as_array()
                    .ok_or_else(|| D::Error::custom("chains must be an array"))?;
                if ca.len() != 2 {
                    return Err(D::Error::custom("chains must have two entries"));
                }
                Ok(TraceEvent::Stretch {
                    edge: [edge_v[0], edge_v[1]],
                    pos: usize_of(get("pos")?)?,
                    v: usize_of(get("v")?)?,
                    x,
                    chains: [vec_of(ca[0].clone())?, vec_of(ca[1].clone())?],
                })
            }
            "twang" => Ok(TraceEvent::Twang {
                a: usize_of(get("a")?)?,
                b: usize_of(get("b")?)?,
                c: usize_of(get("c")?)?,
                pos: usize_of(get("pos")?)?,
                chain: vec_of(get("chain")?)?,
                hairpin: get("hairpin")?
                    .as_bool()
                    .ok_or_else(|| D::Error::custom("hairpin must be a boolean"))?,
            }),
            other => Err(D::Error::custom(format!("unknown op {other:?}"))),
        }
    }
}

impl TraceEvent {
    pub fn from_move_event(ev: &MoveEvent) -> Self {
        match ev {
            MoveEvent::Stretch {
                edge_pos,
                a,
                b,
                v,
                x,
                chain1,
                chain2,
                ..
            } => TraceEvent::Stretch {
                edge: [*a, *b],
                pos: *edge_pos,
                v: *v,
                x: x.to_quad(),
                chains: [chain1.clone(), chain2.clone()],
            },
            MoveEvent::Twang {
                pos,
                a,
                b,
                c,
                chain,
                hairpin,
                ..
            } => TraceEvent::Twang {
                a: *a,
                b: *b,
                c: *c,
                pos: *pos,
                chain: chain.clone(),
                hairpin: *hairpin,
            },
        }
    }
}

/// Serialize events as JSONL, one event per line.
pub fn write_trace(events: &[MoveEvent]) -> Result<String, IoError> {
    let mut out = String::new();
    for ev in events {
        out.push_str(&serde_json::to_string(&TraceEvent::from_move_event(ev))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn read_trace(text: &str) -> Result<Vec<TraceEvent>, IoError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(IoError::from))
        .collect()
}

/// Replay a trace against an initial wrap: applies each event at its
/// recorded position, re-deriving and checking the recorded chains, and
/// returns the final wrap. Replay is bit-exact: representations evolve
/// exactly as they did when the trace was recorded.
pub fn replay_trace(
    ps: &PointSet,
    initial: &Wrap,
    events: &[TraceEvent],
) -> Result<Wrap, IoError> {
    let mut engine = crate::moves::MoveEngine::new(ps, initial.clone(), crate::observe::CheckLevel::Off);
    for (k, ev) in events.iter().enumerate() {
        match ev {
            TraceEvent::Stretch {
                edge,
                pos,
                v,
                x,
                chains,
            } => {
                let (a, b) = engine.wrap().edge(*pos);
                if edge[0] == edge[1] {
                    // zero-length stretch: hairpin reversal splice
                    let applied = engine
                        .zero_length_stretch(*pos, edge[0], *v)
                        .map_err(|e| IoError::ReplayMismatch(format!("event {k}: {e}")))?;
                    let _ = applied;
                    continue;
                }
                if (a, b) != (edge[0], edge[1]) {
                    return Err(IoError::ReplayMismatch(format!(
                        "event {k}: edge at position {pos} is ({a},{b}), trace says ({},{})",
                        edge[0], edge[1]
                    )));
                }
                let xp = RationalPoint::from_quad(*x);
                let applied = engine
                    .stretch(*pos, *v, &xp)
                    .map_err(|e| IoError::ReplayMismatch(format!("event {k}: {e}")))?;
                if let MoveEvent::Stretch { chain1, chain2, .. } = &applied {
                    if chain1 != &chains[0] || chain2 != &chains[1] {
                        return Err(IoError::ReplayMismatch(format!(
                            "event {k}: recomputed capture chains differ from the trace"
                        )));
                    }
                }
            }
            TraceEvent::Twang {
                a,
                b,
                c,
                pos,
                chain,
                hairpin,
            } => {
                let got_b = engine.wrap().at(*pos);
                let (got_a, got_c) = engine.wrap().neighbors(*pos);
                if got_b != *b || got_a != *a || got_c != *c {
                    return Err(IoError::ReplayMismatch(format!(
                        "event {k}: occurrence at {pos} is ({got_a},{got_b},{got_c}), trace says ({a},{b},{c})"
                    )));
                }
                let applied = engine
                    .twang(*pos)
                    .map_err(|e| IoError::ReplayMismatch(format!("event {k}: {e}")))?;
                if let MoveEvent::Twang {
                    chain: got_chain,
                    hairpin: got_hairpin,
                    ..
                } = &applied
                {
                    if got_chain != chain || got_hairpin != hairpin {
                        return Err(IoError::ReplayMismatch(format!(
                            "event {k}: recomputed twang chain differs from the trace"
                        )));
                    }
                }
            }
        }
    }
    let (wrap, _) = engine.into_parts();
    Ok(wrap)
}

/// Summary block written next to traces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformSummary {
    pub moves: usize,
    pub atomic_moves: usize,
    pub ok: bool,
}

/// Digest helper exposed for tools that want to assert replay equality.
pub fn wrap_digest(w: &Wrap) -> u64 {
    sigma_digest(w.sigma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;
    use crate::moves::FifoPolicy;
    use crate::observe::CheckLevel;
    use crate::wrap::Polygonization;

    fn p5() -> PointSet {
        PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
            Point::new(3, 1),
        ])
        .unwrap()
    }

    #[test]
    fn pointset_roundtrip() {
        let s = p5();
        let f = PointSetFile::from_set(&s);
        let text = serde_json::to_string(&f).unwrap();
        let back: PointSetFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_set().unwrap().points(), s.points());
    }

    #[test]
    fn trace_roundtrip_and_replay() {
        let s = p5();
        let p = Polygonization::new(vec![0, 4, 1, 2, 3], &s).unwrap();
        let initial = p.as_wrap().clone();
        let mut engine = crate::moves::MoveEngine::new(&s, p.into_wrap(), CheckLevel::EveryAtomic);
        let mut policy = FifoPolicy::new();
        engine.forward_move(3, 4, &mut policy).unwrap();
        let events: Vec<MoveEvent> = engine
            .journal()
            .entries
            .iter()
            .flat_map(|e| e.events.iter().cloned())
            .collect();
        let text = write_trace(&events).unwrap();
        let parsed = read_trace(&text).unwrap();
        let replayed = replay_trace(&s, &initial, &parsed).unwrap();
        assert_eq!(replayed.sigma(), engine.wrap().sigma());
    }

    #[test]
    fn trace_x_survives_serialization() {
        let x = RationalPoint::new(rat(7, 3), rat(-5, 2));
        let q = x.to_quad();
        let ev = TraceEvent::Stretch {
            edge: [0, 1],
            pos: 0,
            v: 2,
            x: q,
            chains: [vec![], vec![]],
        };
        let line = serde_json::to_string(&ev).unwrap();
        let back: TraceEvent = serde_json::from_str(&line).unwrap();
        match back {
            TraceEvent::Stretch { x: xq, .. } => {
                assert_eq!(RationalPoint::from_quad(xq), x);
            }
            _ => panic!(),
        }
    }
}
