//! Fixtures shared by the benchmarks.

use shiftlab_core::counterexamples::theorem_predicate;
use shiftlab_core::{SearchBudget, ShiftSpec};

/// The `(M+1)`-step shift whose window predicate compares first and last symbols.
pub fn theorem_spec(m: usize) -> ShiftSpec {
    ShiftSpec::Step(theorem_predicate(m).expect("m >= 1"))
}

pub fn default_budget() -> SearchBudget {
    SearchBudget::default()
}
