use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// A finitely described total predicate on windows of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// 1 iff the first and last symbols of the window agree.
    FirstEqualsLast,
    /// Window 2: 1 iff `x = x0`, or `x ≠ x0` and `y = x`.
    ZeroStepExample { x0: Symbol },
    Table(Table),
}

/// Explicit values on windows over `{0, …, support−1}`; every other window
/// (including those touching a symbol ≥ `support`, and any window without an
/// entry) evaluates to `default`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    pub support: u32,
    pub entries: BTreeMap<Word, bool>,
    pub default: bool,
}

impl Table {
    fn eval(&self, x: &[Symbol]) -> bool {
        if x.iter().any(|s| s.0 >= self.support) {
            return self.default;
        }
        // BTreeMap<Word, _> cannot be queried by slice without allocating.
        self.entries.get(&Word::from(x)).copied().unwrap_or(self.default)
    }
}

/// The auxiliary map `A^w → {0, 1}` that induces a `(w−1)`-step shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowPredicate {
    window: usize,
    rule: Rule,
}

impl WindowPredicate {
    pub fn new(window: usize, rule: Rule) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidPredicate(format!(
                "window must be at least 2, got {window}"
            )));
        }
        match &rule {
            Rule::FirstEqualsLast => {}
            Rule::ZeroStepExample { .. } => {
                if window != 2 {
                    return Err(Error::InvalidPredicate(format!(
                        "zero_step_example has window 2, got {window}"
                    )));
                }
            }
            Rule::Table(t) => {
                for word in t.entries.keys() {
                    if word.len() != window {
                        return Err(Error::InvalidPredicate(format!(
                            "table entry {word} does not have length {window}"
                        )));
                    }
                    if word.iter().any(|s| s.0 >= t.support) {
                        return Err(Error::InvalidPredicate(format!(
                            "table entry {word} uses a symbol outside support {}",
                            t.support
                        )));
                    }
                }
            }
        }
        Ok(WindowPredicate { window, rule })
    }

    pub fn first_equals_last(window: usize) -> Result<Self> {
        WindowPredicate::new(window, Rule::FirstEqualsLast)
    }

    pub fn zero_step_example(x0: Symbol) -> Self {
        WindowPredicate {
            window: 2,
            rule: Rule::ZeroStepExample { x0 },
        }
    }

    pub fn table(
        window: usize,
        support: u32,
        entries: BTreeMap<Word, bool>,
        default: bool,
    ) -> Result<Self> {
        WindowPredicate::new(
            window,
            Rule::Table(Table {
                support,
                entries,
                default,
            }),
        )
    }

    /// Constant predicate; `constant(2, true)` is the full shift seen as a 1-step shift.
    pub fn constant(window: usize, value: bool) -> Result<Self> {
        WindowPredicate::table(window, 0, BTreeMap::new(), value)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// Value on a window of exactly `self.window()` symbols.
    pub fn eval(&self, x: &[Symbol]) -> bool {
        debug_assert_eq!(x.len(), self.window);
        match &self.rule {
            Rule::FirstEqualsLast => x[0] == x[x.len() - 1],
            Rule::ZeroStepExample { x0 } => x[0] == *x0 || x[1] == x[0],
            Rule::Table(t) => t.eval(x),
        }
    }

    /// The induced map on all finite words: 1 on words shorter than the
    /// window, otherwise the product over every sliding window.
    pub fn induced_value(&self, x: &[Symbol]) -> bool {
        x.windows(self.window).all(|win| self.eval(win))
    }
}
