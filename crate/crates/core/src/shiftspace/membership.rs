use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::point::Point;
use crate::shiftspace::budget::SearchBudget;
use crate::shiftspace::follower::Explorer;
use crate::shiftspace::spec::ShiftSpec;
use crate::word::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Verified,
    NotVerifiedUpToBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub symbol: Symbol,
    pub continuation: Point,
}

/// Outcome of a budgeted search for the extensions of a finite word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    pub status: WitnessStatus,
    /// Ascending by symbol.
    pub witnesses: Vec<Witness>,
    /// Witness count at each truncation searched.
    #[serde(deserialize_with = "counts_from_json")]
    pub counts_at: BTreeMap<u32, usize>,
}

// Keys arrive as strings when the verdict is nested in a tagged enum.
fn counts_from_json<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, usize>, D::Error> {
    let raw = BTreeMap::<String, usize>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
        .collect()
}

impl WitnessVerdict {
    pub fn is_verified(&self) -> bool {
        self.status == WitnessStatus::Verified
    }

    pub fn count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.witnesses.iter().map(|w| w.symbol).collect()
    }

    /// Re-checks every witness: `x · a · y` must lie in `X^inf`.
    pub fn recheck(&self, spec: &ShiftSpec, x: &[Symbol]) -> bool {
        self.witnesses.iter().all(|wit| {
            let mut prefix = x.to_vec();
            prefix.push(wit.symbol);
            spec.in_inf(&wit.continuation.prepend(&prefix))
                .unwrap_or(false)
        })
    }
}

/// All symbols `a` below the truncation such that `x·a·y ∈ X^inf` for some
/// eventually periodic `y` over the truncation with period at most the
/// budget's period bound.
pub fn extension_witnesses(
    spec: &ShiftSpec,
    x: &Word,
    budget: &SearchBudget,
) -> Result<WitnessVerdict> {
    budget.validate()?;
    let mut explorer = Explorer::new(spec, budget.truncation, budget.period_bound)?;
    let witnesses: Vec<Witness> = explorer
        .witnesses(x)
        .into_iter()
        .map(|(symbol, continuation)| Witness {
            symbol,
            continuation,
        })
        .collect();
    let status = if witnesses.len() >= budget.threshold {
        WitnessStatus::Verified
    } else {
        WitnessStatus::NotVerifiedUpToBudget
    };
    Ok(WitnessVerdict {
        status,
        counts_at: BTreeMap::from([(budget.truncation, witnesses.len())]),
        witnesses,
    })
}

/// Budgeted test of `x ∈ X^fin`, with witness counts at half and full
/// truncation so stabilization is visible.
pub fn in_fin(spec: &ShiftSpec, x: &Word, budget: &SearchBudget) -> Result<WitnessVerdict> {
    let mut verdict = extension_witnesses(spec, x, budget)?;
    let half = budget.half_truncation();
    if half != budget.truncation {
        let mut explorer = Explorer::new(spec, half, budget.period_bound)?;
        let count = explorer.witness_count(x, usize::MAX);
        verdict.counts_at.insert(half, count);
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Membership {
    /// Exact answer for an infinite point.
    Exact { member: bool },
    /// Budgeted answer for a finite point.
    Budgeted { verdict: WitnessVerdict },
}

impl Membership {
    /// Exact membership, or a verified finite element.
    pub fn is_member(&self) -> bool {
        match self {
            Membership::Exact { member } => *member,
            Membership::Budgeted { verdict } => verdict.is_verified(),
        }
    }
}

pub fn membership(spec: &ShiftSpec, p: &Point, budget: &SearchBudget) -> Result<Membership> {
    match p.as_word() {
        None => Ok(Membership::Exact {
            member: spec.in_inf(p)?,
        }),
        Some(word) => Ok(Membership::Budgeted {
            verdict: in_fin(spec, &word, budget)?,
        }),
    }
}
