//! Cascade policies: pluggable rules for choosing which double contact to
//! twang next. Policies are registered by name and selected at runtime.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::wrap::Wrap;

/// A twangable occurrence candidate: vertex b at `pos` with its current
/// neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwangSite {
    pub pos: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Strategy choosing the next twang during a cascade. Implementations must
/// be deterministic given their construction parameters: equal states and
/// equal policies yield identical cascades.
pub trait CascadePolicy {
    fn name(&self) -> &'static str;

    /// Called when a cascade starts on `wrap`.
    fn begin_cascade(&mut self, wrap: &Wrap);

    /// Called after a twang removed an occurrence of `b` and inserted the
    /// chain vertices `inserted` (which are now in double contact).
    fn observe_twang(&mut self, wrap: &Wrap, b: usize, inserted: &[usize]);

    /// Order in which double-contact points should be tried next. The engine
    /// twangs the first point that has a twangable occurrence and reports a
    /// stuck cascade only when every listed point fails.
    fn point_order(&mut self, wrap: &Wrap) -> Vec<usize>;

    /// Among the twangable occurrences of the chosen point, pick one.
    /// Candidates arrive sorted by (position of a, position of c).
    fn pick_site(&mut self, wrap: &Wrap, candidates: &[TwangSite]) -> TwangSite;
}

/// Default deterministic policy: a FIFO queue of double-contact points; for
/// the head point the twangable occurrence with lexicographically smallest
/// (position of a, position of c) is chosen.
#[derive(Debug, Default)]
pub struct FifoPolicy {
    queue: Vec<usize>,
}

impl FifoPolicy {
    pub fn new() -> Self {
        Self::default()
    }

    fn push_missing(&mut self, idx: usize) {
        if !self.queue.contains(&idx) {
            self.queue.push(idx);
        }
    }
}

impl CascadePolicy for FifoPolicy {
    fn name(&self) -> &'static str {
        "fifo"
    }

    fn begin_cascade(&mut self, wrap: &Wrap) {
        self.queue.clear();
        for dc in wrap.double_contacts() {
            self.queue.push(dc.index);
        }
    }

    fn observe_twang(&mut self, wrap: &Wrap, b: usize, inserted: &[usize]) {
        self.queue.retain(|&i| wrap.occurrence_count(i) >= 2);
        for &i in inserted {
            if wrap.occurrence_count(i) >= 2 {
                self.push_missing(i);
            }
        }
        if wrap.occurrence_count(b) >= 2 {
            self.push_missing(b);
        }
    }

    fn point_order(&mut self, wrap: &Wrap) -> Vec<usize> {
        self.queue.retain(|&i| wrap.occurrence_count(i) >= 2);
        self.queue.clone()
    }

    fn pick_site(&mut self, _wrap: &Wrap, candidates: &[TwangSite]) -> TwangSite {
        candidates[0]
    }
}

/// Seeded random policy for experiments: picks a uniformly random double
/// contact and a uniformly random twangable occurrence.
#[derive(Debug)]
pub struct RandomPolicy {
    rng: ChaCha8Rng,
}

impl RandomPolicy {
    pub fn new(seed: u64) -> Self {
        RandomPolicy {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CascadePolicy for RandomPolicy {
    fn name(&self) -> &'static str {
        "random"
    }

    fn begin_cascade(&mut self, _wrap: &Wrap) {}

    fn observe_twang(&mut self, _wrap: &Wrap, _b: usize, _inserted: &[usize]) {}

    fn point_order(&mut self, wrap: &Wrap) -> Vec<usize> {
        let mut pts: Vec<usize> = wrap.double_contacts().iter().map(|d| d.index).collect();
        if pts.len() > 1 {
            // Fisher-Yates with the seeded generator
            for i in (1..pts.len()).rev() {
                let j = self.rng.gen_range(0..=i);
                pts.swap(i, j);
            }
        }
        pts
    }

    fn pick_site(&mut self, _wrap: &Wrap, candidates: &[TwangSite]) -> TwangSite {
        candidates[self.rng.gen_range(0..candidates.len())]
    }
}

/// Construct a policy by registered name. `seed` feeds randomized policies.
pub fn make_policy(name: &str, seed: u64) -> Option<Box<dyn CascadePolicy>> {
    match name {
        "fifo" => Some(Box::new(FifoPolicy::new())),
        "random" => Some(Box::new(RandomPolicy::new(seed))),
        _ => None,
    }
}

/// Names of all registered cascade policies.
pub fn policy_names() -> &'static [&'static str] {
    &["fifo", "random"]
}
