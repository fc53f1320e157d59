//! The move calculus: stretches, twangs, cascades, forward moves, and their
//! exact journaled reversals.

mod engine;
mod journal;
mod policy;
mod reverse;
mod swaphop;

pub use engine::{MoveEngine, MoveError};
pub use journal::{sigma_digest, Journal, MoveEntry, MoveEvent};
pub use policy::{make_policy, policy_names, CascadePolicy, FifoPolicy, RandomPolicy, TwangSite};
pub use reverse::{reverse_move, reverse_stretch, reverse_twang};
pub use swaphop::{hop_valid, swap_valid};
