//! Atomic move events and the journal that makes every move exactly
//! reversible.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::geom::RationalPoint;

/// One atomic move. Positions refer to the sigma representation at the
/// moment the event was applied; replaying a journal therefore reproduces
/// the exact same representations.
#[derive(Debug, Clone, PartialEq)]
pub enum MoveEvent {
    /// Edge (a, b) at `edge_pos` replaced by a · chain1 · v · chain2 · b,
    /// where the chains are the hull chains of the points captured in the
    /// triangles (a, x, v) and (v, x, b).
    Stretch {
        edge_pos: usize,
        a: usize,
        b: usize,
        v: usize,
        x: RationalPoint,
        chain1: Vec<usize>,
        chain2: Vec<usize>,
        pre_digest: u64,
        post_digest: u64,
    },
    /// Occurrence of b at `pos` (between a and c) replaced by the interior
    /// of sp(abc); `hairpin` marks the a = c case where the spike a,b,a
    /// collapses to a.
    Twang {
        pos: usize,
        a: usize,
        b: usize,
        c: usize,
        chain: Vec<usize>,
        hairpin: bool,
        pre_digest: u64,
        post_digest: u64,
    },
}

impl MoveEvent {
    pub fn is_twang(&self) -> bool {
        matches!(self, MoveEvent::Twang { .. })
    }

    pub fn twang_vertex(&self) -> Option<usize> {
        match self {
            MoveEvent::Twang { b, .. } => Some(*b),
            _ => None,
        }
    }

    pub fn pre_digest(&self) -> u64 {
        match self {
            MoveEvent::Stretch { pre_digest, .. } | MoveEvent::Twang { pre_digest, .. } => {
                *pre_digest
            }
        }
    }

    pub fn post_digest(&self) -> u64 {
        match self {
            MoveEvent::Stretch { post_digest, .. } | MoveEvent::Twang { post_digest, .. } => {
                *post_digest
            }
        }
    }
}

/// In-process digest of a sigma sequence, for cheap replay assertions.
pub fn sigma_digest(sigma: &[usize]) -> u64 {
    let mut h = DefaultHasher::new();
    sigma.hash(&mut h);
    h.finish()
}

/// One journaled move: the full pre-state plus the atomic events, grouped.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveEntry {
    /// Exact sigma before the move.
    pub pre_sigma: Vec<usize>,
    pub events: Vec<MoveEvent>,
    pub post_digest: u64,
}

impl MoveEntry {
    /// Number of twangs in this move (the cascade length; at least 1 for a
    /// forward move).
    pub fn twang_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_twang()).count()
    }
}

/// Ordered list of journaled moves.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Journal {
    pub entries: Vec<MoveEntry>,
}

impl Journal {
    pub fn new() -> Self {
        Journal { entries: Vec::new() }
    }

    pub fn moves(&self) -> usize {
        self.entries.len()
    }

    pub fn atomic_moves(&self) -> usize {
        self.entries.iter().map(|e| e.events.len()).sum()
    }

    pub fn twangs(&self) -> usize {
        self.entries.iter().map(|e| e.twang_count()).sum()
    }

    pub fn append(&mut self, other: &mut Journal) {
        self.entries.append(&mut other.entries);
    }
}
