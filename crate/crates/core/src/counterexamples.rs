//! `(M+1)`-step shifts that are not conjugate to any `M`-step shift.
//!
//! For `M ≥ 1` the shift is cut out by the window predicate "first symbol of
//! a length-`(M+2)` window equals its last". Two computable facts carry the
//! argument:
//!
//! * any `M`-step shift containing the periodic family `(y·s_k)^∞` for
//!   infinitely many distinct `s_k` also contains the points
//!   `z_k = y·s_0·(y·s_k)^∞`, which converge to the finite word `y·s_0·y` of
//!   length `2M+1`; and
//! * the `(M+1)`-step shift above has no finite element of any length in
//!   `M+1..=2M+1`, while its `ξ`-family converges to a length-`M` word.
//!
//! Conjugacies preserve length, so no conjugacy can exist. For `M = 0` the
//! obstruction is the number of length-1 elements: finite and non-empty here,
//! but either zero or infinite in a full shift.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::convergence::{convergence_profile, ConvergenceProfile};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::shiftspace::{
    in_fin, length_spectrum, SearchBudget, ShiftSpec, SpectrumEntry, WindowPredicate,
    WitnessVerdict,
};
use crate::word::{Symbol, Word};

/// `f̃(x_1 … x_{M+2}) = 1` iff `x_1 = x_{M+2}`.
pub fn theorem_predicate(m: usize) -> Result<WindowPredicate> {
    if m == 0 {
        return Err(Error::Precondition("theorem predicate needs M >= 1".into()));
    }
    WindowPredicate::first_equals_last(m + 2)
}

/// `f̃(x, y) = 1` iff `x = x0`, or `x ≠ x0` and `y = x`.
pub fn zero_step_predicate(x0: Symbol) -> WindowPredicate {
    WindowPredicate::zero_step_example(x0)
}

fn check_window(pred: &WindowPredicate, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("M must be at least 1".into()));
    }
    if pred.window() != m + 2 {
        return Err(Error::Precondition(format!(
            "predicate window {} is not M+2 = {}",
            pred.window(),
            m + 2
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOneWitness {
    /// The `x_1 … x_M`.
    pub base: Word,
    /// Every `x_{M+1}` below the truncation for which the cyclic windows pass.
    pub witnesses: Vec<Symbol>,
    /// Cyclic windows evaluated per witness.
    pub checked_equalities: usize,
}

/// Whether every length-`(M+2)` window starting at positions `1..=M+2` of
/// `(base·s)^∞` evaluates to 1.
pub fn cyclic_windows_pass(pred: &WindowPredicate, base: &[Symbol], s: Symbol) -> bool {
    let w = pred.window();
    let mut period = base.to_vec();
    period.push(s);
    let q = period.len();
    let unrolled: Vec<Symbol> = (0..2 * w - 1).map(|i| period[i % q]).collect();
    unrolled.windows(w).all(|win| pred.eval(win))
}

/// Searches bases of length `M` in lexicographic order for one with at least
/// `threshold` witnesses `s`. `Ok(None)` means nothing qualified within the
/// truncation, which is not a refutation.
pub fn check_condition_one(
    pred: &WindowPredicate,
    m: usize,
    budget: &SearchBudget,
) -> Result<Option<ConditionOneWitness>> {
    check_window(pred, m)?;
    budget.validate()?;
    let n = budget.truncation;
    let mut base = vec![Symbol(0); m];
    loop {
        let witnesses: Vec<Symbol> = (0..n)
            .map(Symbol)
            .filter(|&s| cyclic_windows_pass(pred, &base, s))
            .collect();
        if witnesses.len() >= budget.threshold {
            return Ok(Some(ConditionOneWitness {
                base: base.into(),
                witnesses,
                checked_equalities: m + 2,
            }));
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if base[i].0 + 1 < n {
                base[i].0 += 1;
                break;
            }
            base[i] = Symbol(0);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Stable,
    Growing,
}

/// How far a condition-(2) count can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// First-equals-last: exactly one symbol closes any window, for every truncation.
    Analytic,
    /// Sampled counts only.
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionTwoSample {
    pub word: Word,
    pub counts_at: BTreeMap<u32, usize>,
    pub growth: Growth,
    pub basis: Basis,
}

impl ConditionTwoSample {
    pub fn count(&self) -> usize {
        self.counts_at.values().last().copied().unwrap_or(0)
    }
}

/// For each `(M+1)`-word `w`, counts the symbols `a` with `f̃(w·a) = 1` at
/// half and full truncation.
pub fn check_condition_two(
    pred: &WindowPredicate,
    m: usize,
    budget: &SearchBudget,
    samples: &[Word],
) -> Result<Vec<ConditionTwoSample>> {
    check_window(pred, m)?;
    budget.validate()?;
    let basis = match pred.rule() {
        crate::shiftspace::Rule::FirstEqualsLast => Basis::Analytic,
        _ => Basis::Evidence,
    };
    samples
        .iter()
        .map(|word| {
            if word.len() != m + 1 {
                return Err(Error::Precondition(format!(
                    "sample {word} does not have length M+1 = {}",
                    m + 1
                )));
            }
            let count = |n: u32| {
                (0..n)
                    .filter(|&a| pred.eval(&word.concat(&[Symbol(a)])))
                    .count()
            };
            let half = budget.half_truncation();
            let counts_at = BTreeMap::from([(half, count(half)), (budget.truncation, count(budget.truncation))]);
            let growth = if count(half) == count(budget.truncation) {
                Growth::Stable
            } else {
                Growth::Growing
            };
            Ok(ConditionTwoSample {
                word: word.clone(),
                counts_at,
                growth,
                basis,
            })
        })
        .collect()
}

/// Deterministic sample of `(M+1)`-words over the half truncation.
pub fn condition_two_samples(m: usize, budget: &SearchBudget) -> Vec<Word> {
    let h = budget.half_truncation();
    let len = m as u32 + 1;
    let mut out = vec![
        Word::from_indices((0..len).map(|_| 0)),
        Word::from_indices((1..=len).map(|i| i % h)),
        Word::from_indices((1..=len).rev().map(|i| i % h)),
        Word::from_indices((0..len).map(|i| if i % 2 == 0 { 0 } else { h - 1 })),
    ];
    out.sort();
    out.dedup();
    out
}

/// Fresh symbol schedule: `s_j = max(base) + j`.
fn fresh(base: &[Symbol], j: usize) -> Symbol {
    let top = base.iter().map(|s| s.0).max().unwrap_or(0);
    Symbol(top + j as u32)
}

/// `ξ^j = (base · s_j)^∞` for `j = 1..=count`, with pairwise distinct `s_j`.
pub fn xi_family(m: usize, base: &Word, count: usize) -> Result<Vec<Point>> {
    if m == 0 || base.len() != m {
        return Err(Error::Precondition(format!(
            "xi family needs M >= 1 and a base of length M, got M={m}, base {base}"
        )));
    }
    (1..=count)
        .map(|j| Point::periodic(base.concat(&[fresh(base, j)])))
        .collect()
}

/// `z = y · s0 · tail`, for an `(M+1)`-periodic tail with `M = |y|`.
pub fn z_point(y: &Word, s0: Symbol, tail: &Point) -> Result<Point> {
    let m = y.len();
    if !tail.is_infinite() || tail.shift_by(m + 1) != *tail {
        return Err(Error::Precondition(format!(
            "tail {tail} is not an infinite point with period {}",
            m + 1
        )));
    }
    Ok(tail.prepend(&y.concat(&[s0])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZLemmaReport {
    pub y: Word,
    pub s0: Symbol,
    /// Indices `k` whose `(y·s_k)^∞` is not in `X^inf`; index 0 is `(y·s0)^∞`.
    pub hypothesis_failures: Vec<usize>,
    /// Indices `k` whose `z_k` is not in `X^inf`.
    pub z_failures: Vec<usize>,
    pub z_family: Vec<Point>,
    pub limit: Word,
    pub convergence: ConvergenceProfile,
    pub limit_verdict: WitnessVerdict,
}

impl ZLemmaReport {
    pub fn passes(&self) -> bool {
        self.hypothesis_failures.is_empty()
            && self.z_failures.is_empty()
            && self.convergence.passes()
            && self.limit_verdict.is_verified()
    }
}

/// Replays the `z`-construction inside an `M`-step spec (window `M+1`).
pub fn z_lemma_check(
    spec: &ShiftSpec,
    y: &Word,
    s0: Symbol,
    count: usize,
    budget: &SearchBudget,
) -> Result<ZLemmaReport> {
    let m = y.len();
    let window_ok = matches!(spec, ShiftSpec::Step(p) if p.window() == m + 1);
    if m == 0 || !window_ok {
        return Err(Error::Precondition(format!(
            "z-lemma needs a Step spec with window |y|+1 = {} and |y| >= 1",
            m + 1
        )));
    }
    let mut hypothesis_failures = Vec::new();
    if !spec.in_inf(&Point::periodic(y.concat(&[s0]))?)? {
        hypothesis_failures.push(0);
    }
    let mut z_failures = Vec::new();
    let mut z_family = Vec::with_capacity(count);
    for k in 1..=count {
        let yk = Point::periodic(y.concat(&[fresh(y, k)]))?;
        if !spec.in_inf(&yk)? {
            hypothesis_failures.push(k);
        }
        let z = z_point(y, s0, &yk)?;
        if !spec.in_inf(&z)? {
            z_failures.push(k);
        }
        z_family.push(z);
    }
    let limit = y.concat(&[s0]).concat(y);
    let convergence = convergence_profile(&z_family, &Point::from_word(limit.clone()), count as u32);
    let limit_verdict = in_fin(spec, &limit, budget)?;
    Ok(ZLemmaReport {
        y: y.clone(),
        s0,
        hypothesis_failures,
        z_failures,
        z_family,
        limit,
        convergence,
        limit_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub spec: ShiftSpec,
    pub condition1: Option<ConditionOneWitness>,
    pub condition2: Vec<ConditionTwoSample>,
    pub spectrum: Vec<SpectrumEntry>,
    pub xi_convergence: ConvergenceProfile,
    pub checks: ObstructionChecks,
    pub conclusion: String,
    pub budget: SearchBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionChecks {
    pub condition1: bool,
    pub condition2: bool,
    pub spectrum: bool,
    pub xi_convergence: bool,
}

impl ObstructionChecks {
    pub fn all(&self) -> bool {
        self.condition1 && self.condition2 && self.spectrum && self.xi_convergence
    }
}

impl ObstructionReport {
    pub fn passes(&self) -> bool {
        self.checks.all()
    }
}

/// Assembles every check for the `(M+1)`-step shift of [`theorem_predicate`].
pub fn obstruction_report(m: usize, budget: &SearchBudget) -> Result<ObstructionReport> {
    budget.validate()?;
    let pred = theorem_predicate(m)?;
    let spec = ShiftSpec::Step(pred.clone());

    let condition1 = check_condition_one(&pred, m, budget)?;
    let condition2 = check_condition_two(&pred, m, budget, &condition_two_samples(m, budget))?;
    let spectrum = length_spectrum(&spec, 2 * m + 1, budget)?;

    let base = condition1
        .as_ref()
        .map(|c| c.base.clone())
        .unwrap_or_else(|| Word::from_indices(vec![0; m]));
    let family = xi_family(m, &base, budget.truncation as usize)?;
    let xi_convergence = convergence_profile(
        &family,
        &Point::from_word(base.clone()),
        budget.threshold as u32,
    );

    let checks = ObstructionChecks {
        condition1: condition1.is_some(),
        condition2: condition2
            .iter()
            .all(|s| s.growth == Growth::Stable && s.count() > 0),
        spectrum: spectrum.iter().all(|e| e.is_present() == (e.length <= m)),
        xi_convergence: xi_convergence.passes(),
    };
    let absent_band = spectrum
        .iter()
        .filter(|e| e.length > m)
        .all(|e| !e.is_present());
    let conclusion = if checks.all() {
        format!(
            "The ξ-family converges to a finite element of length {m}, yet no finite element of \
             any length in {}..={} exists up to budget, so none of length {} (the limit length \
             forced in any {m}-step shift). The {}-step shift is not conjugate to any {m}-step shift.",
            m + 1,
            2 * m + 1,
            2 * m + 1,
            m + 1
        )
    } else if absent_band {
        format!(
            "No finite element of length {} found up to budget, but other checks failed: {checks:?}",
            2 * m + 1
        )
    } else {
        format!("Obstruction not established up to budget: {checks:?}")
    };
    Ok(ObstructionReport {
        m,
        spec,
        condition1,
        condition2,
        spectrum,
        xi_convergence,
        checks,
        conclusion,
        budget: *budget,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthOneRow {
    pub symbol: Symbol,
    pub count: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FollowerRow {
    pub symbol: Symbol,
    /// Least `y` with `f̃(x, y) = 1`.
    pub follower: Option<Symbol>,
    /// `x^∞ ∈ X^inf` (or, for `x0`, some continuation exists).
    pub continues: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroStepReport {
    pub x0: Symbol,
    pub spec: ShiftSpec,
    pub condition_i: Vec<FollowerRow>,
    pub condition_i_ok: bool,
    /// Symbols with at least `threshold` followers at full truncation, with
    /// counts at half and full truncation.
    pub condition_ii: Vec<(Symbol, BTreeMap<u32, usize>)>,
    pub length_one: Vec<LengthOneRow>,
    pub verified_length_one: Vec<Symbol>,
    pub full_shift_verified_length_one: usize,
    pub conclusion: String,
    pub budget: SearchBudget,
}

impl ZeroStepReport {
    pub fn passes(&self) -> bool {
        self.condition_i_ok
            && self.verified_length_one == [self.x0]
            && self.full_shift_verified_length_one == self.budget.truncation as usize
    }
}

pub fn zero_step_report(x0: Symbol, budget: &SearchBudget) -> Result<ZeroStepReport> {
    budget.validate()?;
    let pred = zero_step_predicate(x0);
    let spec = ShiftSpec::Step(pred.clone());
    let n = budget.truncation;

    let mut condition_i = Vec::with_capacity(n as usize);
    let mut condition_ii = Vec::new();
    for x in (0..n).map(Symbol) {
        let follower = (0..n).map(Symbol).find(|&y| pred.eval(&[x, y]));
        let continues = if x == x0 {
            follower.is_some()
        } else {
            spec.in_inf(&Point::periodic(Word::new(vec![x]))?)?
        };
        condition_i.push(FollowerRow {
            symbol: x,
            follower,
            continues,
        });
        let followers = |t: u32| (0..t).filter(|&y| pred.eval(&[x, Symbol(y)])).count();
        if followers(n) >= budget.threshold {
            let half = budget.half_truncation();
            condition_ii.push((x, BTreeMap::from([(half, followers(half)), (n, followers(n))])));
        }
    }
    let condition_i_ok = condition_i
        .iter()
        .all(|r| r.follower.is_some() && r.continues);

    let mut length_one = Vec::with_capacity(n as usize);
    let mut full_count = 0;
    for x in (0..n).map(Symbol) {
        let word = Word::new(vec![x]);
        let v = in_fin(&spec, &word, budget)?;
        length_one.push(LengthOneRow {
            symbol: x,
            count: v.count(),
            verified: v.is_verified(),
        });
        if in_fin(&ShiftSpec::FullShift, &word, budget)?.is_verified() {
            full_count += 1;
        }
    }
    let verified_length_one: Vec<Symbol> = length_one
        .iter()
        .filter(|r| r.verified)
        .map(|r| r.symbol)
        .collect();
    let conclusion = if verified_length_one.len() == 1 && full_count == n as usize {
        format!(
            "Exactly one length-1 element ({}) versus {full_count} in the full shift over the same \
             truncation; a 0-step shift with any length-1 element has infinitely many, so this \
             1-step shift is not conjugate to any 0-step shift.",
            verified_length_one[0]
        )
    } else {
        format!(
            "Unexpected length-1 slice: {} verified elements, full shift {full_count}",
            verified_length_one.len()
        )
    };
    Ok(ZeroStepReport {
        x0,
        spec,
        condition_i,
        condition_i_ok,
        condition_ii,
        length_one,
        verified_length_one,
        full_shift_verified_length_one: full_count,
        conclusion,
        budget: *budget,
    })
}
