use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds for every search that stands in for a statement about the whole
/// infinite alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Symbols searched are `{0, …, truncation−1}`.
    pub truncation: u32,
    /// Number of distinct extension symbols that counts as "infinitely many".
    pub threshold: usize,
    /// Longest period tried for infinite continuations.
    pub period_bound: usize,
    /// Unrolling depth for prefix cross-checks.
    pub depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            truncation: 16,
            threshold: 8,
            period_bound: 8,
            depth: 64,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.truncation < 1 {
            return Err(Error::InvalidBudget("truncation must be at least 1".into()));
        }
        if self.threshold < 2 {
            return Err(Error::InvalidBudget("threshold must be at least 2".into()));
        }
        if self.period_bound < 1 {
            return Err(Error::InvalidBudget("period bound must be at least 1".into()));
        }
        if self.depth < 1 {
            return Err(Error::InvalidBudget("depth must be at least 1".into()));
        }
        Ok(())
    }

    /// The smaller of the two truncations reported by `in_fin`.
    pub fn half_truncation(&self) -> u32 {
        (self.truncation / 2).max(1)
    }

    pub fn with_truncation(self, truncation: u32) -> Self {
        SearchBudget { truncation, ..self }
    }

    pub fn with_period_bound(self, period_bound: usize) -> Self {
        SearchBudget {
            period_bound,
            ..self
        }
    }
}
