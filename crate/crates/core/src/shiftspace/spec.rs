use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::shiftspace::predicate::{Rule, Table, WindowPredicate};
use crate::word::{Symbol, Word};

/// A description of a shift space `X ⊆ Σ_ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub enum ShiftSpec {
    FullShift,
    /// A finite list of forbidden blocks (a shift of finite type).
    Forbidden(Vec<Word>),
    /// Window predicate of length `w`: a `(w−1)`-step shift.
    Step(WindowPredicate),
}

impl ShiftSpec {
    pub fn forbidden(words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidSpec("forbidden list is empty".into()));
        }
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidSpec("forbidden words must be non-empty".into()));
        }
        Ok(ShiftSpec::Forbidden(words))
    }

    /// Longest block any membership check needs to look at.
    pub fn reach(&self) -> usize {
        match self {
            ShiftSpec::FullShift => 1,
            ShiftSpec::Forbidden(words) => words.iter().map(|w| w.len()).max().unwrap_or(1).max(1),
            ShiftSpec::Step(pred) => pred.window(),
        }
    }

    /// No subblock of `x` is forbidden.
    pub fn allowed(&self, x: &[Symbol]) -> bool {
        match self {
            ShiftSpec::FullShift => true,
            ShiftSpec::Forbidden(words) => words
                .iter()
                .all(|f| !x.windows(f.len()).any(|win| win == &f[..])),
            ShiftSpec::Step(pred) => pred.induced_value(x),
        }
    }

    /// Checks only the constraints on blocks ending at the last symbol of
    /// `x`; `x` is allowed iff this holds for every prefix.
    pub(crate) fn tail_ok(&self, x: &[Symbol]) -> bool {
        match self {
            ShiftSpec::FullShift => true,
            ShiftSpec::Forbidden(words) => words.iter().all(|f| !x.ends_with(f)),
            ShiftSpec::Step(pred) => {
                let w = pred.window();
                x.len() < w || pred.eval(&x[x.len() - w..])
            }
        }
    }

    /// Exact membership of an infinite point in `X^inf`.
    pub fn in_inf(&self, p: &Point) -> Result<bool> {
        if !p.is_infinite() {
            return Err(Error::NotInfinite);
        }
        // Every subblock of an infinite sequence sits inside a reach-window.
        Ok(p.windows(self.reach()).iter().all(|win| self.allowed(win)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpecJson {
    Full,
    Forbidden { words: Vec<Word> },
    Step { window: usize, predicate: PredicateJson },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PredicateJson {
    FirstEqualsLast,
    ZeroStepExample {
        x0: Symbol,
    },
    Table {
        support: u32,
        entries: Vec<EntryJson>,
        default: Bit,
    },
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    window: Word,
    value: Bit,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
struct Bit(bool);

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Bit> {
        match v {
            0 => Ok(Bit(false)),
            1 => Ok(Bit(true)),
            _ => Err(Error::InvalidPredicate(format!("bit must be 0 or 1, got {v}"))),
        }
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        b.0 as u8
    }
}

impl TryFrom<SpecJson> for ShiftSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<ShiftSpec> {
        match j {
            SpecJson::Full => Ok(ShiftSpec::FullShift),
            SpecJson::Forbidden { words } => ShiftSpec::forbidden(words),
            SpecJson::Step { window, predicate } => {
                let rule = match predicate {
                    PredicateJson::FirstEqualsLast => Rule::FirstEqualsLast,
                    PredicateJson::ZeroStepExample { x0 } => Rule::ZeroStepExample { x0 },
                    PredicateJson::Table {
                        support,
                        entries,
                        default,
                    } => {
                        let mut map = BTreeMap::new();
                        for e in entries {
                            if map.insert(e.window.clone(), e.value.0).is_some() {
                                return Err(Error::InvalidPredicate(format!(
                                    "duplicate table entry {}",
                                    e.window
                                )));
                            }
                        }
                        Rule::Table(Table {
                            support,
                            entries: map,
                            default: default.0,
                        })
                    }
                };
                WindowPredicate::new(window, rule).map(ShiftSpec::Step)
            }
        }
    }
}

impl From<ShiftSpec> for SpecJson {
    fn from(s: ShiftSpec) -> SpecJson {
        match s {
            ShiftSpec::FullShift => SpecJson::Full,
            ShiftSpec::Forbidden(words) => SpecJson::Forbidden { words },
            ShiftSpec::Step(pred) => {
                let predicate = match pred.rule().clone() {
                    Rule::FirstEqualsLast => PredicateJson::FirstEqualsLast,
                    Rule::ZeroStepExample { x0 } => PredicateJson::ZeroStepExample { x0 },
                    Rule::Table(t) => PredicateJson::Table {
                        support: t.support,
                        entries: t
                            .entries
                            .into_iter()
                            .map(|(window, v)| EntryJson {
                                window,
                                value: Bit(v),
                            })
                            .collect(),
                        default: Bit(t.default),
                    },
                };
                SpecJson::Step {
                    window: pred.window(),
                    predicate,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn fel(window: usize) -> ShiftSpec {
        ShiftSpec::Step(WindowPredicate::first_equals_last(window).unwrap())
    }

    fn ep(pre: &str, per: &str) -> Point {
        Point::eventually_periodic(w(pre), w(per)).unwrap()
    }

    #[test]
    fn reach_examples() {
        assert_eq!(fel(3).reach(), 3);
        assert_eq!(ShiftSpec::forbidden(vec![w("0 1"), w("2")]).unwrap().reach(), 2);
        assert_eq!(ShiftSpec::FullShift.reach(), 1);
    }

    #[test]
    fn allowed_examples() {
        assert!(!fel(3).allowed(&w("0 1 1")));
        assert!(fel(3).allowed(&w("0 1")));
        assert!(ShiftSpec::FullShift.allowed(&w("4 4 9 1")));
        let f = ShiftSpec::forbidden(vec![w("0 0")]).unwrap();
        assert!(f.allowed(&w("0 1 0")));
        assert!(!f.allowed(&w("1 0 0 1")));
    }

    #[test]
    fn in_inf_examples() {
        assert_eq!(fel(3).in_inf(&ep("", "0 5")), Ok(true));
        assert_eq!(fel(3).in_inf(&ep("", "0 1 1")), Ok(false));
        assert_eq!(ShiftSpec::FullShift.in_inf(&ep("", "7")), Ok(true));
        assert_eq!(fel(3).in_inf(&Point::Finite(w("0"))), Err(Error::NotInfinite));
        assert_eq!(fel(3).in_inf(&Point::Empty), Err(Error::NotInfinite));
        // forbidden word shorter than the reach, in the preperiod
        let f = ShiftSpec::forbidden(vec![w("3"), w("0 0 1")]).unwrap();
        assert_eq!(f.in_inf(&ep("3", "1")), Ok(false));
        assert_eq!(f.in_inf(&ep("2", "1")), Ok(true));
    }

    #[test]
    fn tail_ok_prefixes_agree_with_allowed() {
        let specs = [
            fel(3),
            ShiftSpec::forbidden(vec![w("1"), w("0 2 0")]).unwrap(),
            ShiftSpec::FullShift,
        ];
        for spec in &specs {
            for x in ["0 1 0", "0 2 0", "2 2", "0 0 0 1", ""] {
                let x = w(x);
                let by_tail = (1..=x.len()).all(|i| spec.tail_ok(&x[..i]));
                assert_eq!(by_tail, spec.allowed(&x), "{spec:?} {x}");
            }
        }
    }

    #[test]
    fn json_round_trip_and_shapes() {
        let s: ShiftSpec = serde_json::from_str(
            r#"{"kind":"step","window":3,"predicate":{"kind":"first_equals_last"}}"#,
        )
        .unwrap();
        assert_eq!(s, fel(3));
        let z: ShiftSpec = serde_json::from_str(
            r#"{"kind":"step","window":2,"predicate":{"kind":"zero_step_example","x0":4}}"#,
        )
        .unwrap();
        assert_eq!(z, ShiftSpec::Step(WindowPredicate::zero_step_example(Symbol(4))));
        let t: ShiftSpec = serde_json::from_str(
            r#"{"kind":"step","window":2,"predicate":{"kind":"table","support":2,
                "entries":[{"window":[0,1],"value":0}],"default":1}}"#,
        )
        .unwrap();
        let back: ShiftSpec = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(
            serde_json::to_string(&ShiftSpec::FullShift).unwrap(),
            r#"{"kind":"full"}"#
        );
        let f: ShiftSpec = serde_json::from_str(r#"{"kind":"forbidden","words":[[0,1],[2]]}"#).unwrap();
        assert_eq!(f, ShiftSpec::forbidden(vec![w("0 1"), w("2")]).unwrap());
    }

    #[test]
    fn json_rejects_malformed() {
        for bad in [
            r#"{"kind":"forbidden","words":[]}"#,
            r#"{"kind":"forbidden","words":[[]]}"#,
            r#"{"kind":"step","window":1,"predicate":{"kind":"first_equals_last"}}"#,
            r#"{"kind":"step","window":3,"predicate":{"kind":"zero_step_example","x0":0}}"#,
            r#"{"kind":"step","window":2,"predicate":{"kind":"table","support":2,"entries":[],"default":2}}"#,
            r#"{"kind":"step","window":2,"predicate":{"kind":"table","support":2,
                "entries":[{"window":[0,1],"value":0},{"window":[0,1],"value":1}],"default":1}}"#,
            r#"{"kind":"circle"}"#,
        ] {
            assert!(serde_json::from_str::<ShiftSpec>(bad).is_err(), "{bad}");
        }
    }
}
