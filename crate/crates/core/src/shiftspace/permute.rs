use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::shiftspace::predicate::{Rule, WindowPredicate};
use crate::shiftspace::spec::ShiftSpec;
use crate::word::{Symbol, Word};

/// A bijection of `{0, …, s−1}` extended by the identity to all of ℕ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolPermutation {
    images: Vec<Symbol>,
    inverse: Vec<Symbol>,
}

impl SymbolPermutation {
    /// `images[i]` is the image of symbol `i`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let s = images.len();
        let mut inverse = vec![None; s];
        for (i, &img) in images.iter().enumerate() {
            let slot = inverse
                .get_mut(img as usize)
                .ok_or_else(|| Error::NotBijective(format!("image {img} outside 0..{s}")))?;
            if slot.is_some() {
                return Err(Error::NotBijective(format!("{img} is hit twice")));
            }
            *slot = Some(Symbol(i as u32));
        }
        Ok(SymbolPermutation {
            images: images.into_iter().map(Symbol).collect(),
            inverse: inverse.into_iter().map(|s| s.expect("all slots filled")).collect(),
        })
    }

    pub fn identity(support: u32) -> Self {
        SymbolPermutation::new((0..support).collect()).expect("identity is bijective")
    }

    pub fn swap(a: u32, b: u32) -> Self {
        let mut images: Vec<u32> = (0..=a.max(b)).collect();
        images.swap(a as usize, b as usize);
        SymbolPermutation::new(images).expect("swap is bijective")
    }

    pub fn support(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, s: Symbol) -> Symbol {
        self.images.get(s.0 as usize).copied().unwrap_or(s)
    }

    pub fn apply_inverse(&self, s: Symbol) -> Symbol {
        self.inverse.get(s.0 as usize).copied().unwrap_or(s)
    }

    pub fn apply_word(&self, x: &[Symbol]) -> Word {
        x.iter().map(|&s| self.apply(s)).collect()
    }

    pub fn inverse(&self) -> SymbolPermutation {
        SymbolPermutation {
            images: self.inverse.clone(),
            inverse: self.images.clone(),
        }
    }
}

/// Relabels every symbol of `spec` through `perm`. The result describes the
/// image of the shift under the induced symbol map, a conjugate shift.
pub fn permute_symbols(spec: &ShiftSpec, perm: &SymbolPermutation) -> Result<ShiftSpec> {
    Ok(match spec {
        ShiftSpec::FullShift => ShiftSpec::FullShift,
        ShiftSpec::Forbidden(words) => {
            ShiftSpec::Forbidden(words.iter().map(|x| perm.apply_word(x)).collect())
        }
        ShiftSpec::Step(pred) => ShiftSpec::Step(permute_predicate(pred, perm)?),
    })
}

fn permute_predicate(pred: &WindowPredicate, perm: &SymbolPermutation) -> Result<WindowPredicate> {
    let window = pred.window();
    match pred.rule() {
        Rule::FirstEqualsLast => Ok(pred.clone()),
        Rule::ZeroStepExample { x0 } => Ok(WindowPredicate::zero_step_example(perm.apply(*x0))),
        Rule::Table(t) if perm.support() <= t.support => {
            let entries = t
                .entries
                .iter()
                .map(|(x, &v)| (perm.apply_word(x), v))
                .collect();
            WindowPredicate::table(window, t.support, entries, t.default)
        }
        Rule::Table(t) => {
            // The permutation moves symbols across the table's support, so
            // tabulate the relabeled predicate over the larger support.
            let support = perm.support();
            let mut entries = BTreeMap::new();
            let mut x = vec![Symbol(0); window];
            loop {
                let pre: Vec<Symbol> = x.iter().map(|&s| perm.apply_inverse(s)).collect();
                let v = pred.eval(&pre);
                if v != t.default {
                    entries.insert(Word::from(x.clone()), v);
                }
                let mut i = window;
                loop {
                    if i == 0 {
                        return WindowPredicate::table(window, support, entries, t.default);
                    }
                    i -= 1;
                    if x[i].0 + 1 < support {
                        x[i].0 += 1;
                        break;
                    }
                    x[i] = Symbol(0);
                }
            }
        }
    }
}

// Tables keep their own structure, so compare predicates semantically in tests.
#[cfg(test)]
fn same_on(a: &WindowPredicate, b: &WindowPredicate, n: u32) -> bool {
    let w = a.window();
    let mut x = vec![Symbol(0); w];
    loop {
        if a.eval(&x) != b.eval(&x) {
            return false;
        }
        let mut i = w;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if x[i].0 + 1 < n {
                x[i].0 += 1;
                break;
            }
            x[i] = Symbol(0);
        }
    }
}
