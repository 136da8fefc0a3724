//! One-sided shift spaces over the countably infinite alphabet ℕ.
//!
//! The full shift contains the empty sequence, every finite word, and every
//! infinite sequence; infinite points are represented as eventually periodic
//! lassos. On top of that sit generalized cylinders, convergence
//! certificates, shift specs given by forbidden blocks or window predicates,
//! budgeted membership searches, and the constructions of `(M+1)`-step shifts
//! that are not conjugate to any `M`-step shift.

pub mod convergence;
pub mod counterexamples;
pub mod cylinder;
pub mod error;
pub mod point;
pub mod shiftspace;
pub mod word;

pub use convergence::{convergence_profile, sigma_discontinuity_demo, ConvergenceProfile, RowOutcome};
pub use cylinder::Cylinder;
pub use error::{Error, Result};
pub use point::{canonicalize, Lasso, Length, Point};
pub use shiftspace::{
    extension_witnesses, in_fin, language_up_to, length_spectrum, membership, periodic_points,
    permute_symbols, Membership, SearchBudget, ShiftSpec, SpectrumEntry, SymbolPermutation,
    WindowPredicate, WitnessStatus, WitnessVerdict,
};
pub use word::{Symbol, Word};
