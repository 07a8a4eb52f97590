//! Outcomes of the mechanical verifications.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Counts collected by a passing check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Number of individual equalities or rank conditions verified.
    pub cases: usize,
    /// Named counts (ranks, dimensions, word totals) reported alongside.
    pub counts: Vec<(String, u64)>,
}

impl CheckStats {
    pub fn new(cases: usize) -> Self {
        CheckStats { cases, counts: Vec::new() }
    }

    pub fn with(mut self, name: &str, value: u64) -> Self {
        self.counts.push((String::from(name), value));
        self
    }

    pub fn count(&self, name: &str) -> Option<u64> {
        self.counts.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// A failed check, carrying a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub witness: String,
}

impl CheckFailure {
    pub fn new(witness: impl Into<String>) -> Self {
        CheckFailure { witness: witness.into() }
    }
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.witness)
    }
}

pub type CheckResult = Result<CheckStats, CheckFailure>;

/// Fails with a formatted witness unless `cond` holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::check::CheckFailure::new($crate::__private::format!($($arg)+)));
        }
    };
}
