use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A letter of the alphabet. The alphabet is identified with the natural
/// numbers, so a symbol is just its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl From<u32> for Symbol {
    fn from(i: u32) -> Self {
        Symbol(i)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite sequence of symbols. The empty word is the empty sequence Ø.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        Word(indices.into_iter().map(Symbol).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|s| s.0).collect()
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// Largest symbol index in the word, if any.
    pub fn max_symbol(&self) -> Option<Symbol> {
        self.0.iter().copied().max()
    }

    /// Shortlex comparison: shorter words first, ties broken lexicographically.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Ø");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated symbol indices. `""` and `"Ø"` give the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "Ø" {
            return Ok(Word::empty());
        }
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map(Symbol)
                    .map_err(|_| Error::InvalidSymbol(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Shorthand used throughout tests: `w("0 5")`.
///
/// Panics on malformed input.
pub fn w(s: &str) -> Word {
    s.parse().expect("malformed word literal")
}
