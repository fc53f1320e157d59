//! Invariant-check levels for move engines.

use std::str::FromStr;

/// How aggressively engines re-verify invariants while running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckLevel {
    /// No online checks (bench mode).
    Off,
    /// Simplicity checked at move boundaries only.
    #[default]
    Boundaries,
    /// Weak simplicity and the perimeter-descent bound checked after every
    /// atomic move.
    EveryAtomic,
}

impl CheckLevel {
    /// Apply the POLYWRAP_CHECK_LEVEL environment override, if set.
    pub fn from_env(default: CheckLevel) -> CheckLevel {
        match std::env::var("POLYWRAP_CHECK_LEVEL") {
            Ok(v) => v.parse().unwrap_or(default),
            Err(_) => default,
        }
    }
}

impl FromStr for CheckLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(CheckLevel::Off),
            "boundaries" => Ok(CheckLevel::Boundaries),
            "every-atomic" => Ok(CheckLevel::EveryAtomic),
            other => Err(format!(
                "unknown check level {other:?}; expected off, boundaries, or every-atomic"
            )),
        }
    }
}
