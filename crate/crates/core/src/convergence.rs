//! Finite convergence certificates in the cylinder topology.
//!
//! Every finite `F ⊂ ℕ` sits inside some `F_m = {0, …, m−1}`, so sweeping `m`
//! over the basic neighborhoods `Z(limit, F_m)` of a finite limit (or
//! `Z(prefix_m(limit))` of an infinite one) exhausts a neighborhood base.

use serde::{Deserialize, Serialize};

use crate::cylinder::Cylinder;
use crate::point::Point;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOutcome {
    /// Every member with index ≥ n0 lies in the neighborhood.
    #[serde(rename = "n0")]
    Settled(usize),
    /// The last member escapes; carries the largest violating index.
    #[serde(rename = "fail")]
    Fail(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub m: u32,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceProfile {
    pub rows: Vec<ProfileRow>,
    pub family_size: usize,
    pub limit: Point,
}

impl ConvergenceProfile {
    pub fn passes(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.outcome, RowOutcome::Settled(_)))
    }

    pub fn row(&self, m: u32) -> Option<RowOutcome> {
        self.rows.iter().find(|r| r.m == m).map(|r| r.outcome)
    }

    /// Settled thresholds, `None` for failing rows.
    pub fn thresholds(&self) -> Vec<Option<usize>> {
        self.rows
            .iter()
            .map(|r| match r.outcome {
                RowOutcome::Settled(n0) => Some(n0),
                RowOutcome::Fail(_) => None,
            })
            .collect()
    }
}

/// The `m`-th basic neighborhood of `limit` in the sweep.
pub fn neighborhood(limit: &Point, m: u32) -> Cylinder {
    match limit.as_word() {
        Some(word) => Cylinder::with_initial_forbidden(word, m),
        None => Cylinder::basic(limit.prefix(m as usize)),
    }
}

/// Certificate that `family` (indexed from 1) converges to `limit`, row by
/// row for `m = 1..=m_max`.
pub fn convergence_profile(family: &[Point], limit: &Point, m_max: u32) -> ConvergenceProfile {
    let n = family.len();
    let rows = (1..=m_max)
        .map(|m| {
            let nbhd = neighborhood(limit, m);
            let last_bad = family
                .iter()
                .enumerate()
                .rev()
                .find(|(_, p)| !nbhd.contains(p))
                .map(|(i, _)| i + 1);
            let outcome = match last_bad {
                None => RowOutcome::Settled(1),
                Some(i) if i == n => RowOutcome::Fail(i),
                Some(i) => RowOutcome::Settled(i + 1),
            };
            ProfileRow { m, outcome }
        })
        .collect();
    ConvergenceProfile {
        rows,
        family_size: n,
        limit: limit.clone(),
    }
}

/// The shift map is not continuous at Ø: `x_n = n·0^∞` converges to Ø while
/// `σ(x_n) = 0^∞` stays out of `Z(Ø, {0})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaDemo {
    pub family: Vec<Point>,
    pub profile: ConvergenceProfile,
    pub shifted: Vec<Point>,
    pub shifted_profile: ConvergenceProfile,
}

impl SigmaDemo {
    /// `x_n → Ø` certified, and `σ(x_n) → σ(Ø)` refuted at the first row.
    pub fn demonstrates_discontinuity(&self) -> bool {
        self.profile.passes()
            && matches!(self.shifted_profile.row(1), Some(RowOutcome::Fail(_)))
    }
}

/// Runs the demo with `x_n` for `n = 0..size`, stored at family index `n+1`.
pub fn sigma_discontinuity_demo(size: usize, m_max: u32) -> SigmaDemo {
    let family: Vec<Point> = (0..size as u32)
        .map(|n| {
            Point::eventually_periodic(Word::from_indices([n]), Word::from_indices([0]))
                .expect("period is non-empty")
        })
        .collect();
    let profile = convergence_profile(&family, &Point::Empty, m_max);
    let shifted: Vec<Point> = family.iter().map(Point::shift).collect();
    let shifted_profile = convergence_profile(&shifted, &Point::Empty.shift(), m_max);
    SigmaDemo {
        family,
        profile,
        shifted,
        shifted_profile,
    }
}
