//! Points of the full shift: the empty sequence, finite words, and infinite
//! sequences. Infinite sequences are always eventually periodic and kept in
//! a canonical lasso form so that equality is structural.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Length of a point: a natural number, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("∞"),
        }
    }
}

/// An eventually periodic sequence `pre · per · per · …` in canonical form:
/// `per` is primitive and `pre` is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    pre: Word,
    per: Word,
}

impl Lasso {
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut pre = pre.into_symbols();
        let mut per = primitive_root(per.into_symbols());
        // Roll the loop entry backwards while the preperiod ends with the
        // symbol that closes the cycle.
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Lasso {
            pre: pre.into(),
            per: per.into(),
        })
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    /// 1-based.
    pub fn symbol_at(&self, i: usize) -> Symbol {
        debug_assert!(i >= 1);
        let a = self.pre.len();
        if i <= a {
            self.pre[i - 1]
        } else {
            self.per[(i - 1 - a) % self.per.len()]
        }
    }

    /// The first `n` symbols.
    pub fn unroll(&self, n: usize) -> Word {
        (1..=n).map(|i| self.symbol_at(i)).collect()
    }
}

fn primitive_root(mut per: Vec<Symbol>) -> Vec<Symbol> {
    let n = per.len();
    for d in 1..n {
        if n.is_multiple_of(d) && per[..n - d] == per[d..] {
            per.truncate(d);
            break;
        }
    }
    per
}

/// A point of the full shift over the natural numbers.
///
/// `Finite` always holds a word of length at least one; build points through
/// [`Point::from_word`] or [`Point::eventually_periodic`] to keep that.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointJson", into = "PointJson")]
pub enum Point {
    Empty,
    Finite(Word),
    EventuallyPeriodic(Lasso),
}

impl Point {
    /// The finite point spelled by `word` (Ø for the empty word).
    pub fn from_word(word: Word) -> Point {
        if word.is_empty() {
            Point::Empty
        } else {
            Point::Finite(word)
        }
    }

    pub fn eventually_periodic(pre: Word, per: Word) -> Result<Point> {
        Lasso::new(pre, per).map(Point::EventuallyPeriodic)
    }

    /// `per^∞`.
    pub fn periodic(per: Word) -> Result<Point> {
        Point::eventually_periodic(Word::empty(), per)
    }

    pub fn length(&self) -> Length {
        match self {
            Point::Empty => Length::Finite(0),
            Point::Finite(w) => Length::Finite(w.len()),
            Point::EventuallyPeriodic(_) => Length::Infinite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::EventuallyPeriodic(_))
    }

    pub fn as_lasso(&self) -> Option<&Lasso> {
        match self {
            Point::EventuallyPeriodic(l) => Some(l),
            _ => None,
        }
    }

    /// The finite word for Empty/Finite points.
    pub fn as_word(&self) -> Option<Word> {
        match self {
            Point::Empty => Some(Word::empty()),
            Point::Finite(w) => Some(w.clone()),
            Point::EventuallyPeriodic(_) => None,
        }
    }

    /// The `i`-th symbol (1-based), or `None` past the end of a finite point.
    pub fn symbol_at(&self, i: usize) -> Option<Symbol> {
        if i == 0 {
            return None;
        }
        match self {
            Point::Empty => None,
            Point::Finite(w) => w.get(i - 1).copied(),
            Point::EventuallyPeriodic(l) => Some(l.symbol_at(i)),
        }
    }

    /// The first `min(n, length)` symbols.
    pub fn prefix(&self, n: usize) -> Word {
        match self {
            Point::Empty => Word::empty(),
            Point::Finite(w) => w[..n.min(w.len())].into(),
            Point::EventuallyPeriodic(l) => l.unroll(n),
        }
    }

    /// The shift map: drop the first symbol. Ø and one-symbol points go to Ø.
    pub fn shift(&self) -> Point {
        match self {
            Point::Empty => Point::Empty,
            Point::Finite(w) => Point::from_word(w[1..].into()),
            Point::EventuallyPeriodic(l) => {
                let (pre, per) = if l.pre.is_empty() {
                    let mut per = l.per.to_vec();
                    per.rotate_left(1);
                    (Word::empty(), Word::from(per))
                } else {
                    (Word::from(&l.pre[1..]), l.per.clone())
                };
                Point::eventually_periodic(pre, per).expect("period is non-empty")
            }
        }
    }

    pub fn shift_by(&self, times: usize) -> Point {
        (0..times).fold(self.clone(), |p, _| p.shift())
    }

    /// `word · self`.
    pub fn prepend(&self, word: &[Symbol]) -> Point {
        match self {
            Point::Empty => Point::from_word(word.into()),
            Point::Finite(w) => Point::from_word(Word::from(word).concat(w)),
            Point::EventuallyPeriodic(l) => {
                Point::eventually_periodic(Word::from(word).concat(&l.pre), l.per.clone())
                    .expect("period is non-empty")
            }
        }
    }

    /// All distinct subblocks of length `len`.
    pub fn windows(&self, len: usize) -> BTreeSet<Word> {
        if len == 0 {
            return BTreeSet::from([Word::empty()]);
        }
        match self {
            Point::Empty => BTreeSet::new(),
            Point::Finite(w) => w.windows(len).map(Word::from).collect(),
            Point::EventuallyPeriodic(l) => {
                // Windows starting past pre+per repeat earlier ones.
                let starts = l.pre.len() + l.per.len();
                let unrolled = l.unroll(starts + len - 1);
                unrolled.windows(len).map(Word::from).collect()
            }
        }
    }
}

/// Canonical eventually periodic point from an arbitrary lasso description.
pub fn canonicalize(preperiod: Word, period: Word) -> Result<Point> {
    Point::eventually_periodic(preperiod, period)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Empty => f.write_str("Ø"),
            Point::Finite(w) => write!(f, "{w}"),
            Point::EventuallyPeriodic(l) => {
                if l.pre.is_empty() {
                    write!(f, "({})^∞", l.per)
                } else {
                    write!(f, "{} ({})^∞", l.pre, l.per)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PointJson {
    Empty,
    Finite { word: Word },
    Ep { pre: Word, per: Word },
}

impl TryFrom<PointJson> for Point {
    type Error = Error;

    fn try_from(j: PointJson) -> Result<Point> {
        match j {
            PointJson::Empty => Ok(Point::Empty),
            PointJson::Finite { word } if word.is_empty() => Err(Error::EmptyFinite),
            PointJson::Finite { word } => Ok(Point::Finite(word)),
            PointJson::Ep { pre, per } => Point::eventually_periodic(pre, per),
        }
    }
}

impl From<Point> for PointJson {
    fn from(p: Point) -> PointJson {
        match p {
            Point::Empty => PointJson::Empty,
            Point::Finite(word) => PointJson::Finite { word },
            Point::EventuallyPeriodic(Lasso { pre, per }) => PointJson::Ep { pre, per },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    fn ep(pre: &str, per: &str) -> Point {
        Point::eventually_periodic(w(pre), w(per)).unwrap()
    }

    // Raw unrolling of an uncanonicalized lasso, independent of `Lasso`.
    fn raw_unroll(pre: &[u32], per: &[u32], n: usize) -> Vec<u32> {
        (0..n)
            .map(|i| if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] })
            .collect()
    }

    #[test]
    fn lengths() {
        assert_eq!(Point::Empty.length(), Length::Finite(0));
        assert_eq!(Point::Finite(w("0 5")).length(), Length::Finite(2));
        assert_eq!(ep("", "0 1").length(), Length::Infinite);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Point::Empty.shift(), Point::Empty);
        assert_eq!(Point::Finite(w("7")).shift(), Point::Empty);
        assert_eq!(Point::Finite(w("7 3")).shift(), Point::Finite(w("3")));
        let s = ep("", "0 1").shift();
        assert_eq!(s, ep("", "1 0"));
        assert_eq!(s.prefix(4).indices(), raw_unroll(&[], &[0, 1], 5)[1..].to_vec());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(ep("0", "0 0"), Point::EventuallyPeriodic(Lasso { pre: w(""), per: w("0") }));
        assert_eq!(ep("0 1", "0 1 0 1"), ep("", "0 1"));
        assert_eq!(
            ep("0 1", "0 1 0 1").prefix(8).indices(),
            raw_unroll(&[0, 1], &[0, 1, 0, 1], 8)
        );
        let l = ep("1", "0");
        assert_eq!(l.as_lasso().unwrap().preperiod(), &w("1"));
        assert_eq!(l.as_lasso().unwrap().period(), &w("0"));
        assert_eq!(canonicalize(w("0"), w("")), Err(Error::EmptyPeriod));
    }

    #[test]
    fn symbol_at_examples() {
        assert_eq!(Point::Finite(w("0 5")).symbol_at(2), Some(Symbol(5)));
        assert_eq!(Point::Finite(w("0 5")).symbol_at(3), None);
        assert_eq!(ep("1", "0").symbol_at(4), Some(Symbol(0)));
        assert_eq!(ep("1", "0").symbol_at(0), None);
    }

    #[test]
    fn window_examples() {
        let got = ep("", "0 5").windows(2);
        let unrolled = raw_unroll(&[], &[0, 5], 16);
        let brute: BTreeSet<Word> =
            unrolled.windows(2).map(|x| Word::from_indices(x.iter().copied())).collect();
        assert_eq!(got, brute);
        assert_eq!(got, BTreeSet::from([w("0 5"), w("5 0")]));
        assert!(Point::Finite(w("0 1")).windows(3).is_empty());
        assert_eq!(ep("", "7").windows(3), BTreeSet::from([w("7 7 7")]));
    }

    #[test]
    fn json_shapes() {
        let p: Point = serde_json::from_str(r#"{"kind":"ep","pre":[0,1],"per":[0,1,0,1]}"#).unwrap();
        assert_eq!(p, ep("", "0 1"));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"kind":"ep","pre":[],"per":[0,1]}"#);
        assert_eq!(serde_json::to_string(&Point::Empty).unwrap(), r#"{"kind":"empty"}"#);
        assert!(serde_json::from_str::<Point>(r#"{"kind":"finite","word":[]}"#).is_err());
        assert!(serde_json::from_str::<Point>(r#"{"kind":"ep","pre":[],"per":[]}"#).is_err());
    }

    // Windows of every lasso with pre ≤ 4, per ≤ 4 over {0..3}, all L ≤ 8,
    // against windows of a long raw unrolling.
    #[test]
    fn windows_match_unrolling_exhaustive() {
        fn words(max_len: usize, alpha: u32, min_len: usize) -> Vec<Vec<u32>> {
            let mut out = vec![vec![]];
            let mut layer = vec![vec![]];
            for _ in 0..max_len {
                let mut next = Vec::new();
                for x in &layer {
                    for s in 0..alpha {
                        let mut y: Vec<u32> = x.clone();
                        y.push(s);
                        next.push(y);
                    }
                }
                out.extend(next.iter().cloned());
                layer = next;
            }
            out.retain(|x| x.len() >= min_len);
            out
        }
        // Alphabet 4 at full sizes is 341^2 lassos; use 3 symbols for
        // length-4 components and 4 symbols for length ≤ 3 to stay quick.
        let mut checked = 0;
        for (alpha, max) in [(3u32, 4usize), (4, 3)] {
            let pres = words(max, alpha, 0);
            let pers = words(max, alpha, 1);
            for pre in &pres {
                for per in &pers {
                    let p = Point::eventually_periodic(
                        Word::from_indices(pre.iter().copied()),
                        Word::from_indices(per.iter().copied()),
                    )
                    .unwrap();
                    for len in 1..=8 {
                        let raw = raw_unroll(pre, per, pre.len() + 2 * per.len() + 2 * len);
                        let brute: BTreeSet<Word> = raw
                            .windows(len)
                            .map(|x| Word::from_indices(x.iter().copied()))
                            .collect();
                        assert_eq!(p.windows(len), brute, "pre={pre:?} per={per:?} L={len}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100_000);
    }

    fn lasso_parts() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
        (prop::collection::vec(0u32..4, 0..6), prop::collection::vec(0u32..4, 1..6))
    }

    proptest! {
        #[test]
        fn canonical_form_is_symbolwise_equal((pre, per) in lasso_parts()) {
            let p = Point::eventually_periodic(
                Word::from_indices(pre.clone()), Word::from_indices(per.clone())).unwrap();
            let n = 2 * (pre.len() + per.len()) + 8;
            prop_assert_eq!(p.prefix(n).indices(), raw_unroll(&pre, &per, n));
        }

        #[test]
        fn canonicalize_is_idempotent((pre, per) in lasso_parts()) {
            let p = Point::eventually_periodic(
                Word::from_indices(pre), Word::from_indices(per)).unwrap();
            let l = p.as_lasso().unwrap();
            let again = canonicalize(l.preperiod().clone(), l.period().clone()).unwrap();
            prop_assert_eq!(&again, &p);
            // Canonical form invariants.
            if let Some(last) = l.preperiod().last() {
                prop_assert_ne!(Some(last), l.period().last());
            }
            let per = l.period().to_vec();
            prop_assert_eq!(primitive_root(per.clone()), per);
        }

        #[test]
        fn equal_sequences_have_equal_forms((pre, per) in lasso_parts(), (pre2, per2) in lasso_parts()) {
            let a = Point::eventually_periodic(Word::from_indices(pre.clone()), Word::from_indices(per.clone())).unwrap();
            let b = Point::eventually_periodic(Word::from_indices(pre2.clone()), Word::from_indices(per2.clone())).unwrap();
            // Two lassos are equal as sequences iff they agree on a prefix of
            // length max(pre) + lcm-bound; pre+per products bound that.
            let n = pre.len().max(pre2.len()) + per.len() * per2.len() + 1;
            let same = raw_unroll(&pre, &per, n) == raw_unroll(&pre2, &per2, n);
            prop_assert_eq!(same, a == b);
        }

        #[test]
        fn shift_decrements_length(word in prop::collection::vec(0u32..5, 0..6), (pre, per) in lasso_parts()) {
            let p = Point::from_word(Word::from_indices(word.clone()));
            let expected = Length::Finite(word.len().saturating_sub(1));
            prop_assert_eq!(p.shift().length(), expected);
            let q = Point::eventually_periodic(Word::from_indices(pre.clone()), Word::from_indices(per.clone())).unwrap();
            let s = q.shift();
            prop_assert_eq!(s.length(), Length::Infinite);
            let n = pre.len() + per.len() + 4;
            prop_assert_eq!(s.prefix(n).indices(), raw_unroll(&pre, &per, n + 1)[1..].to_vec());
        }
    }
}
