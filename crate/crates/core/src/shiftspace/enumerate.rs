use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::shiftspace::budget::SearchBudget;
use crate::shiftspace::follower::Explorer;
use crate::shiftspace::spec::ShiftSpec;
use crate::word::{Symbol, Word};

/// Allowed words of length ≤ `max_len` over the truncation, in shortlex order
/// (Ø first).
pub fn language_up_to(spec: &ShiftSpec, max_len: usize, budget: &SearchBudget) -> Result<Vec<Word>> {
    budget.validate()?;
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Symbol>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &layer {
            for a in 0..budget.truncation {
                let mut y = x.clone();
                y.push(Symbol(a));
                if spec.tail_ok(&y) {
                    next.push(y);
                }
            }
        }
        out.extend(next.iter().cloned().map(Word::from));
        layer = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "SpectrumJson", into = "SpectrumJson")]
pub struct SpectrumEntry {
    pub length: usize,
    /// Lexicographically least verified finite element of this length, or
    /// `None` when absent up to the budget.
    pub witness: Option<Word>,
}

impl SpectrumEntry {
    pub fn is_present(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Presence {
    Verified,
    Absent,
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    length: usize,
    status: Presence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Word>,
}

impl From<SpectrumJson> for SpectrumEntry {
    fn from(j: SpectrumJson) -> Self {
        SpectrumEntry {
            length: j.length,
            witness: match j.status {
                Presence::Verified => j.witness,
                Presence::Absent => None,
            },
        }
    }
}

impl From<SpectrumEntry> for SpectrumJson {
    fn from(e: SpectrumEntry) -> Self {
        SpectrumJson {
            length: e.length,
            status: if e.witness.is_some() { Presence::Verified } else { Presence::Absent },
            witness: e.witness,
        }
    }
}

/// For each length up to `max_len`, the least word of that length whose
/// `in_fin` verdict is verified.
pub fn length_spectrum(
    spec: &ShiftSpec,
    max_len: usize,
    budget: &SearchBudget,
) -> Result<Vec<SpectrumEntry>> {
    budget.validate()?;
    let mut explorer = Explorer::new(spec, budget.truncation, budget.period_bound)?;
    Ok((0..=max_len)
        .map(|length| SpectrumEntry {
            length,
            witness: explorer.least_verified_word(length, budget.threshold),
        })
        .collect())
}

/// Points `p` with `σ^q(p) = p` in `X^inf`, over the truncation, sorted.
pub fn periodic_points(spec: &ShiftSpec, q: usize, budget: &SearchBudget) -> Result<Vec<Point>> {
    budget.validate()?;
    if q == 0 {
        return Err(Error::Precondition("period must be at least 1".into()));
    }
    let n = budget.truncation;
    let mut found = BTreeSet::new();
    let mut block = vec![Symbol(0); q];
    loop {
        let p = Point::periodic(Word::from(block.clone()))?;
        if spec.in_inf(&p)? {
            found.insert(p);
        }
        // odometer increment
        let mut i = q;
        loop {
            if i == 0 {
                return Ok(found.into_iter().collect());
            }
            i -= 1;
            if block[i].0 + 1 < n {
                block[i].0 += 1;
                break;
            }
            block[i] = Symbol(0);
        }
    }
}
