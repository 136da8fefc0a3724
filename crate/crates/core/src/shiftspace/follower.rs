//! The truncated follower graph of a shift spec and the continuation search
//! built on it.
//!
//! Nodes are blocks of `reach − 1` symbols below the truncation, encoded as
//! base-`n` integers; an edge `u →a→ v` exists when the window `u·a` passes
//! the spec and `v` is the last `reach − 1` symbols of `u·a`. An allowed word
//! admits an infinite continuation of period ≤ `p` iff its trailing block
//! reaches a node lying on a closed walk of length ≤ `p`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::shiftspace::spec::ShiftSpec;
use crate::word::{Symbol, Word};

// Liveness is packed into one u32 per node: a symbol value means "append it
// and continue from the (live) successor".
const UNKNOWN: u32 = u32::MAX;
const DEAD: u32 = u32::MAX - 1;
/// The node lies on a short closed walk; `short_cycle` recomputes it.
const CYCLE: u32 = u32::MAX - 2;

// Graphs up to this many nodes get array-backed memo tables.
const DENSE_LIMIT: u64 = 1 << 22;

/// Per-node memo table, dense for small graphs. Values are stored shifted by
/// one so that a zeroed table reads as all `UNKNOWN`.
enum Memo {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl Memo {
    fn new(size: u64) -> Self {
        if size <= DENSE_LIMIT {
            Memo::Dense(vec![0; size as usize])
        } else {
            Memo::Sparse(HashMap::new())
        }
    }

    fn get(&self, code: u64) -> u32 {
        match self {
            Memo::Dense(v) => v[code as usize].wrapping_sub(1),
            Memo::Sparse(m) => m.get(&code).copied().unwrap_or(UNKNOWN),
        }
    }

    fn set(&mut self, code: u64, value: u32) {
        match self {
            Memo::Dense(v) => v[code as usize] = value.wrapping_add(1),
            Memo::Sparse(m) => {
                m.insert(code, value);
            }
        }
    }
}

pub(crate) struct Explorer<'a> {
    spec: &'a ShiftSpec,
    n: u32,
    period_bound: usize,
    block: usize,
    size: u64,
    /// `n^(block−1)`, used to drop the oldest symbol of a code.
    high: u64,
    live: Memo,
    good: Memo,
    /// `completes[r]` memoizes `completes(_, r + 1)`.
    completes: Vec<Memo>,
    scratch: Vec<Symbol>,
}

impl<'a> Explorer<'a> {
    pub(crate) fn new(spec: &'a ShiftSpec, truncation: u32, period_bound: usize) -> Result<Self> {
        let block = spec.reach() - 1;
        let n = truncation as u64;
        let mut size: u64 = 1;
        for _ in 0..block {
            size = size
                .checked_mul(n)
                .ok_or(Error::StateSpaceTooLarge(block, truncation))?;
        }
        let high = if block == 0 { 1 } else { size / n };
        Ok(Explorer {
            spec,
            n: truncation,
            period_bound,
            block,
            size,
            high,
            live: Memo::new(size),
            good: Memo::new(size),
            completes: Vec::new(),
            scratch: Vec::with_capacity(block + 1),
        })
    }

    fn encode(&self, block: &[Symbol]) -> u64 {
        block
            .iter()
            .fold(0u64, |c, s| c * self.n as u64 + s.0 as u64)
    }

    fn decode_into(&self, mut code: u64, out: &mut Vec<Symbol>) {
        out.clear();
        out.resize(self.block, Symbol(0));
        for slot in out.iter_mut().rev() {
            *slot = Symbol((code % self.n as u64) as u32);
            code /= self.n as u64;
        }
    }

    fn decode(&self, code: u64) -> Vec<Symbol> {
        let mut v = Vec::with_capacity(self.block + 1);
        self.decode_into(code, &mut v);
        v
    }

    fn step(&self, code: u64, a: Symbol) -> u64 {
        if self.block == 0 {
            0
        } else {
            (code % self.high) * self.n as u64 + a.0 as u64
        }
    }

    fn edge_ok(&mut self, code: u64, a: Symbol) -> bool {
        let mut buf = std::mem::take(&mut self.scratch);
        self.decode_into(code, &mut buf);
        buf.push(a);
        let ok = self.spec.tail_ok(&buf);
        self.scratch = buf;
        ok
    }

    /// Shortest closed walk (of length ≤ period bound) through `code`,
    /// returned as the symbols it appends.
    fn short_cycle(&self, code: u64) -> Option<Vec<Symbol>> {
        let block = self.decode(code);
        let k = self.block;
        for len in 1..=self.period_bound {
            if (len..k).any(|j| block[j] != block[j - len]) {
                continue;
            }
            let mut word = block.clone();
            if self.close_walk(&mut word, len) {
                return Some(word.split_off(k));
            }
        }
        None
    }

    // Extends `word` (initially the node's block) until it is `block + len`
    // long and ends with the block again.
    fn close_walk(&self, word: &mut Vec<Symbol>, len: usize) -> bool {
        let j = word.len();
        if j == self.block + len {
            return true;
        }
        if j >= len {
            let s = word[j - len];
            word.push(s);
            if self.spec.tail_ok(word) && self.close_walk(word, len) {
                return true;
            }
            word.pop();
            return false;
        }
        for a in 0..self.n {
            word.push(Symbol(a));
            if self.spec.tail_ok(word) && self.close_walk(word, len) {
                return true;
            }
            word.pop();
        }
        false
    }

    /// Whether some node on a short closed walk is reachable from `start`.
    pub(crate) fn resolve(&mut self, start: u64) -> bool {
        match self.live.get(start) {
            DEAD => return false,
            UNKNOWN => {}
            _ => return true,
        }
        if self.short_cycle(start).is_some() {
            self.live.set(start, CYCLE);
            return true;
        }
        let mut visited = HashSet::from([start]);
        let mut stack: Vec<(u64, u32)> = vec![(start, 0)];
        while let Some(&(node, next)) = stack.last() {
            if next >= self.n {
                stack.pop();
                continue;
            }
            stack.last_mut().expect("non-empty").1 += 1;
            let a = Symbol(next);
            if !self.edge_ok(node, a) {
                continue;
            }
            let succ = self.step(node, a);
            let found = match self.live.get(succ) {
                DEAD => continue,
                UNKNOWN => {
                    if !visited.insert(succ) {
                        continue;
                    }
                    if self.short_cycle(succ).is_some() {
                        self.live.set(succ, CYCLE);
                        true
                    } else {
                        false
                    }
                }
                _ => true,
            };
            if found {
                for &(node, tried) in &stack {
                    self.live.set(node, tried - 1);
                }
                return true;
            }
            stack.push((succ, 0));
        }
        for v in visited {
            self.live.set(v, DEAD);
        }
        false
    }

    /// Path symbols and cycle symbols from a resolved live node.
    fn route(&self, mut code: u64) -> (Vec<Symbol>, Vec<Symbol>) {
        let mut path = Vec::new();
        loop {
            match self.live.get(code) {
                CYCLE => {
                    let cycle = self.short_cycle(code).expect("cycle was found before");
                    return (path, cycle);
                }
                DEAD | UNKNOWN => unreachable!("route through an unresolved node"),
                a => {
                    path.push(Symbol(a));
                    code = self.step(code, Symbol(a));
                }
            }
        }
    }

    /// An eventually periodic continuation of the allowed word `z`, as
    /// (preperiod, period), with all symbols below the truncation.
    pub(crate) fn continuation(&mut self, z: &[Symbol]) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
        let mut word = z.to_vec();
        self.continue_dfs(&mut word, z.len())
    }

    fn continue_dfs(
        &mut self,
        word: &mut Vec<Symbol>,
        base: usize,
    ) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
        let len = word.len();
        if len >= self.block {
            let tail = &word[len - self.block..];
            if tail.iter().all(|s| s.0 < self.n) {
                let code = self.encode(tail);
                if !self.resolve(code) {
                    return None;
                }
                let (path, cycle) = self.route(code);
                let mut pre = word[base..].to_vec();
                pre.extend(path);
                return Some((pre, cycle));
            }
        }
        for a in 0..self.n {
            word.push(Symbol(a));
            if self.spec.tail_ok(word) {
                if let Some(found) = self.continue_dfs(word, base) {
                    word.pop();
                    return Some(found);
                }
            }
            word.pop();
        }
        None
    }

    /// Every symbol `a` below the truncation for which `x·a` has an infinite
    /// continuation, with one continuation each.
    pub(crate) fn witnesses(&mut self, x: &[Symbol]) -> Vec<(Symbol, Point)> {
        if !self.spec.allowed(x) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut z = x.to_vec();
        for a in 0..self.n {
            z.push(Symbol(a));
            if self.spec.tail_ok(&z) {
                if let Some((pre, per)) = self.continuation(&z) {
                    let y = Point::eventually_periodic(pre.into(), per.into())
                        .expect("cycles are non-empty");
                    out.push((Symbol(a), y));
                }
            }
            z.pop();
        }
        out
    }

    /// Number of witness symbols for `x`, stopping once `limit` are found.
    pub(crate) fn witness_count(&mut self, x: &[Symbol], limit: usize) -> usize {
        if !self.spec.allowed(x) {
            return 0;
        }
        let mut count = 0;
        let mut z = x.to_vec();
        for a in 0..self.n {
            if count >= limit {
                break;
            }
            z.push(Symbol(a));
            if self.spec.tail_ok(&z) && self.continuation(&z).is_some() {
                count += 1;
            }
            z.pop();
        }
        count
    }

    // A word ending in this node has at least `threshold` witnesses.
    fn good(&mut self, code: u64, threshold: usize) -> bool {
        match self.good.get(code) {
            UNKNOWN => {}
            g => return g == 1,
        }
        let mut count = 0;
        for a in 0..self.n {
            let a = Symbol(a);
            if self.edge_ok(code, a) && self.resolve(self.step(code, a)) {
                count += 1;
                if count >= threshold {
                    break;
                }
            }
        }
        let g = count >= threshold;
        self.good.set(code, g as u32);
        g
    }

    // Some allowed path of exactly `remaining` edges from `code` ends in a good node.
    fn completes(&mut self, code: u64, remaining: usize, threshold: usize) -> bool {
        if remaining == 0 {
            return self.good(code, threshold);
        }
        while self.completes.len() < remaining {
            self.completes.push(Memo::new(self.size));
        }
        match self.completes[remaining - 1].get(code) {
            UNKNOWN => {}
            c => return c == 1,
        }
        let mut result = false;
        for a in 0..self.n {
            let a = Symbol(a);
            if self.edge_ok(code, a) && self.completes(self.step(code, a), remaining - 1, threshold)
            {
                result = true;
                break;
            }
        }
        self.completes[remaining - 1].set(code, result as u32);
        result
    }

    /// Lexicographically least word of length `len` over the truncation with
    /// at least `threshold` witnesses.
    pub(crate) fn least_verified_word(&mut self, len: usize, threshold: usize) -> Option<Word> {
        let mut word = Vec::with_capacity(len);
        if len < self.block {
            return self.short_word_dfs(&mut word, len, threshold).then(|| word.into());
        }
        if !self.lead_block_dfs(&mut word, len, threshold) {
            return None;
        }
        // Greedy completion: each step keeps a good ending reachable.
        let mut code = self.encode(&word);
        for remaining in (1..=len - self.block).rev() {
            let a = (0..self.n)
                .map(Symbol)
                .find(|&a| {
                    self.edge_ok(code, a)
                        && self.completes(self.step(code, a), remaining - 1, threshold)
                })
                .expect("completes() promised a path");
            word.push(a);
            code = self.step(code, a);
        }
        Some(word.into())
    }

    fn short_word_dfs(&mut self, word: &mut Vec<Symbol>, len: usize, threshold: usize) -> bool {
        if word.len() == len {
            return self.witness_count(word, threshold) >= threshold;
        }
        for a in 0..self.n {
            word.push(Symbol(a));
            if self.spec.tail_ok(word) && self.short_word_dfs(word, len, threshold) {
                return true;
            }
            word.pop();
        }
        false
    }

    fn lead_block_dfs(&mut self, word: &mut Vec<Symbol>, len: usize, threshold: usize) -> bool {
        if word.len() == self.block {
            let code = self.encode(word);
            return self.completes(code, len - self.block, threshold);
        }
        for a in 0..self.n {
            word.push(Symbol(a));
            if self.spec.tail_ok(word) && self.lead_block_dfs(word, len, threshold) {
                return true;
            }
            word.pop();
        }
        false
    }
}
