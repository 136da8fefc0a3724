//! Shift-space descriptions and the searches run against them.
//!
//! Infinite points are decided exactly. Finite points belong to `X` when
//! infinitely many symbols extend them to an infinite point of `X`; that is
//! checked against a [`SearchBudget`] and reported as a [`WitnessVerdict`].

mod budget;
mod enumerate;
mod follower;
mod membership;
mod permute;
mod predicate;
mod spec;

pub use budget::SearchBudget;
pub use enumerate::{language_up_to, length_spectrum, periodic_points, SpectrumEntry};
pub use membership::{
    extension_witnesses, in_fin, membership, Membership, Witness, WitnessStatus, WitnessVerdict,
};
pub use permute::{permute_symbols, SymbolPermutation};
pub use predicate::{Rule, Table, WindowPredicate};
pub use spec::ShiftSpec;

/// Induced value of `pred` on an arbitrary finite word.
pub fn induced_value(pred: &WindowPredicate, x: &[crate::word::Symbol]) -> bool {
    pred.induced_value(x)
}
