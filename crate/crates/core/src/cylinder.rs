use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::point::Point;
use crate::word::{Symbol, Word};

/// Generalized cylinder `Z(base, forbidden)`: points that start with `base`
/// and whose next symbol, if there is one, is not in `forbidden`.
///
/// The base positions must be present. The condition on the next symbol is
/// vacuous when the point ends right after the base, so `base ∈ Z(base, F)`
/// and `Ø ∈ Z(Ø, F)` for every finite `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    pub base: Word,
    pub forbidden: BTreeSet<Symbol>,
}

impl Cylinder {
    pub fn new(base: Word, forbidden: impl IntoIterator<Item = Symbol>) -> Self {
        Cylinder {
            base,
            forbidden: forbidden.into_iter().collect(),
        }
    }

    /// The classical cylinder `Z(base)`.
    pub fn basic(base: Word) -> Self {
        Cylinder::new(base, [])
    }

    /// `Z(base, {0, …, m−1})`.
    pub fn with_initial_forbidden(base: Word, m: u32) -> Self {
        Cylinder::new(base, (0..m).map(Symbol))
    }

    pub fn contains(&self, p: &Point) -> bool {
        let k = self.base.len();
        let prefix_ok = self
            .base
            .iter()
            .enumerate()
            .all(|(i, &b)| p.symbol_at(i + 1) == Some(b));
        prefix_ok
            && p
                .symbol_at(k + 1)
                .is_none_or(|next| !self.forbidden.contains(&next))
    }

    /// Whether the two cylinders share a point of the full shift over the
    /// (infinite) alphabet of natural numbers.
    pub fn intersects(&self, other: &Cylinder) -> bool {
        let (short, long) = if self.base.len() <= other.base.len() {
            (self, other)
        } else {
            (other, self)
        };
        let k = short.base.len();
        if long.base[..k] != short.base[..] {
            return false;
        }
        // Equal bases: Z(base, F1 ∪ F2) still contains the base itself.
        match long.base.get(k) {
            None => true,
            Some(next) => !short.forbidden.contains(next),
        }
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({}, {{", self.base)?;
        for (i, s) in self.forbidden.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("})")
    }
}
