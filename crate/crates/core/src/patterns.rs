//! Compositions, words, and the six 3-letter statistics.
//!
//! This is the combinatorial ground truth: occurrence counting over adjacent
//! (overlapping) triples and exhaustive enumeration. Every generating
//! function in the crate is tested against the tables built here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("part set must be nonempty")]
    EmptySet,
    #[error("parts must be positive integers")]
    NonPositivePart,
    #[error("parts must be strictly increasing, found {0} after {1}")]
    NotIncreasing(u32, u32),
    #[error("cannot parse part set {0:?}")]
    BadSetSyntax(String),
    #[error("unknown pattern {0:?}; expected one of 111, 112, 221, 123, peak, valley")]
    UnknownPattern(String),
}

/// Allowed part values: an explicit strictly increasing list, or all of ℕ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartSet {
    parts: Vec<u32>,
    is_nat: bool,
}

impl PartSet {
    pub fn nat() -> Self {
        Self { parts: Vec::new(), is_nat: true }
    }

    pub fn finite(parts: Vec<u32>) -> Result<Self, PatternError> {
        let first = *parts.first().ok_or(PatternError::EmptySet)?;
        if first == 0 {
            return Err(PatternError::NonPositivePart);
        }
        if let Some(w) = parts.windows(2).find(|w| w[1] <= w[0]) {
            return Err(PatternError::NotIncreasing(w[1], w[0]));
        }
        Ok(Self { parts, is_nat: false })
    }

    /// The alphabet `[k] = {1, ..., k}`.
    pub fn alphabet(k: u32) -> Result<Self, PatternError> {
        Self::finite((1..=k).collect())
    }

    pub fn is_nat(&self) -> bool {
        self.is_nat
    }

    /// Parts usable in compositions of size at most `order`, ascending.
    pub fn materialize(&self, order: u32) -> Vec<u32> {
        if self.is_nat {
            (1..=order).collect()
        } else {
            self.parts.iter().copied().filter(|&a| a <= order).collect()
        }
    }

    /// The explicit parts of a finite set (empty for ℕ).
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nat {
            return f.write_str("nat");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for PartSet {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("nat") {
            return Ok(Self::nat());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PatternError::BadSetSyntax(s.to_owned()))?;
        Self::finite(parts)
    }
}

/// A finite sequence of positive parts; the empty composition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let all_small = self.0.iter().all(|&p| p < 10);
        let sep = if all_small { "" } else { "," };
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(sep))
    }
}

/// The six statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    P111,
    P112,
    P221,
    P123,
    Peak,
    Valley,
}

impl PatternId {
    pub const ALL: [PatternId; 6] =
        [PatternId::P111, PatternId::P112, PatternId::P221, PatternId::P123, PatternId::Peak, PatternId::Valley];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::P111 => "111",
            PatternId::P112 => "112",
            PatternId::P221 => "221",
            PatternId::P123 => "123",
            PatternId::Peak => "peak",
            PatternId::Valley => "valley",
        }
    }

    /// Raw order types making up this statistic.
    pub fn raw_triples(self) -> &'static [RawTriple] {
        use RawTriple::*;
        match self {
            PatternId::P111 => &[T111],
            PatternId::P112 => &[T112],
            PatternId::P221 => &[T221],
            PatternId::P123 => &[T123],
            PatternId::Peak => &[T121, T132, T231],
            PatternId::Valley => &[T212, T213, T312],
        }
    }

    pub fn matches(self, a: u32, b: u32, c: u32) -> bool {
        classify_triple(a, b, c).statistic == Some(self)
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternId {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "111" => Ok(PatternId::P111),
            "112" => Ok(PatternId::P112),
            "221" => Ok(PatternId::P221),
            "123" => Ok(PatternId::P123),
            "peak" => Ok(PatternId::Peak),
            "valley" => Ok(PatternId::Valley),
            other => Err(PatternError::UnknownPattern(other.to_owned())),
        }
    }
}

/// Order type of three adjacent parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RawTriple {
    T111,
    T112,
    T221,
    T123,
    T121,
    T132,
    T231,
    T212,
    T213,
    T312,
    /// 122, 211, 321 and friends: not part of any statistic.
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleClass {
    pub raw: RawTriple,
    /// The statistics are pairwise disjoint, so at most one applies.
    pub statistic: Option<PatternId>,
}

pub fn classify_triple(a: u32, b: u32, c: u32) -> TripleClass {
    use std::cmp::Ordering::*;
    use RawTriple::*;
    let raw = match (a.cmp(&b), b.cmp(&c)) {
        (Equal, Equal) => T111,
        (Equal, Less) => T112,
        (Equal, Greater) => T221,
        (Less, Less) => T123,
        (Less, Greater) => match a.cmp(&c) {
            Equal => T121,
            Less => T132,
            Greater => T231,
        },
        (Greater, Less) => match a.cmp(&c) {
            Equal => T212,
            Less => T213,
            Greater => T312,
        },
        _ => Other,
    };
    let statistic = match raw {
        T111 => Some(PatternId::P111),
        T112 => Some(PatternId::P112),
        T221 => Some(PatternId::P221),
        T123 => Some(PatternId::P123),
        T121 | T132 | T231 => Some(PatternId::Peak),
        T212 | T213 | T312 => Some(PatternId::Valley),
        Other => None,
    };
    TripleClass { raw, statistic }
}

/// Occurrences of `p` over all adjacent index triples.
pub fn count_occurrences(parts: &[u32], p: PatternId) -> usize {
    parts.windows(3).filter(|w| p.matches(w[0], w[1], w[2])).count()
}

pub fn count_raw(parts: &[u32], raw: RawTriple) -> usize {
    parts.windows(3).filter(|w| classify_triple(w[0], w[1], w[2]).raw == raw).count()
}

/// Depth-first enumerator of compositions in lexicographic order,
/// optionally with a fixed number of parts.
pub struct Compositions {
    parts: Vec<u32>,
    target: u32,
    len: Option<usize>,
    stack: Vec<usize>,
    sum: u32,
    next_choice: usize,
    started: bool,
    done: bool,
}

impl Compositions {
    fn new(target: u32, parts: Vec<u32>, len: Option<usize>) -> Self {
        Self { parts, target, len, stack: Vec::new(), sum: 0, next_choice: 0, started: false, done: false }
    }

    fn current(&self) -> Composition {
        Composition(self.stack.iter().map(|&i| self.parts[i]).collect())
    }

    fn is_complete(&self) -> bool {
        self.sum == self.target && self.len.is_none_or(|l| l == self.stack.len())
    }

    // Whether a prefix can still be completed, given the part-count constraint.
    fn feasible(&self, depth: usize, sum: u32) -> bool {
        let remaining = self.target - sum;
        match self.len {
            None => true,
            Some(l) => {
                if depth > l {
                    return false;
                }
                let left = (l - depth) as u64;
                let lo = *self.parts.first().unwrap_or(&0) as u64;
                let hi = *self.parts.last().unwrap_or(&0) as u64;
                left * lo <= remaining as u64 && remaining as u64 <= left * hi
            }
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.is_complete() {
                return Some(self.current());
            }
        }
        loop {
            let remaining = self.target - self.sum;
            let c = self.next_choice;
            if c < self.parts.len() && self.parts[c] <= remaining {
                let sum = self.sum + self.parts[c];
                if self.feasible(self.stack.len() + 1, sum) {
                    self.stack.push(c);
                    self.sum = sum;
                    self.next_choice = 0;
                    if self.is_complete() {
                        return Some(self.current());
                    }
                } else {
                    self.next_choice += 1;
                }
                continue;
            }
            match self.stack.pop() {
                Some(j) => {
                    self.sum -= self.parts[j];
                    self.next_choice = j + 1;
                }
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Every composition of `n` with parts in `set`, in lexicographic order.
pub fn enumerate_compositions(n: u32, set: &PartSet) -> Compositions {
    Compositions::new(n, set.materialize(n), None)
}

/// Compositions of `n` with exactly `m` parts in `set`.
pub fn enumerate_compositions_with_len(n: u32, m: usize, set: &PartSet) -> Compositions {
    Compositions::new(n, set.materialize(n), Some(m))
}

/// All `k^m` words of length `m` over `[k]`, in lexicographic order.
pub struct Words {
    k: u32,
    current: Vec<u32>,
    done: bool,
}

pub fn enumerate_words(k: u32, m: usize) -> Words {
    Words { k, current: vec![1; m], done: k == 0 && m > 0 }
}

impl Iterator for Words {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let out = Composition(self.current.clone());
        // odometer step
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.k {
                self.current[i] += 1;
                break;
            }
            self.current[i] = 1;
        }
        Some(out)
    }
}

/// Exact counts `(n, m, r) -> #objects`. Word tables use `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceTable {
    pub pattern: PatternId,
    pub set: PartSet,
    /// Largest `n` (compositions) or `m` (words) covered.
    pub max: u32,
    pub counts: BTreeMap<(u32, u32, u32), BigInt>,
}

/// One cell where two tables disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u32,
    pub m: u32,
    pub r: u32,
    pub expected: BigInt,
    pub actual: BigInt,
}

impl OccurrenceTable {
    fn empty(pattern: PatternId, set: PartSet, max: u32) -> Self {
        Self { pattern, set, max, counts: BTreeMap::new() }
    }

    fn bump(&mut self, key: (u32, u32, u32)) {
        *self.counts.entry(key).or_insert_with(BigInt::zero) += 1;
    }

    pub fn get(&self, n: u32, m: u32, r: u32) -> BigInt {
        self.counts.get(&(n, m, r)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Reads a builder output into table form, keeping terms up to `max`
    /// in the grading variable.
    pub fn from_series(pattern: PatternId, set: PartSet, max: u32, series: &TruncatedSeries<BigInt>) -> Self {
        let mut t = Self::empty(pattern, set, max);
        let grading = series.grading();
        for (e, c) in series.terms() {
            let d = match grading {
                crate::series::GradingVar::X => e.n,
                crate::series::GradingVar::Z => e.m,
            };
            if d <= max {
                t.counts.insert((e.n, e.m, e.r), c.clone());
            }
        }
        t
    }

    /// Sum over `m` and `r` of the counts at size `n`.
    pub fn row_total(&self, n: u32) -> BigInt {
        self.counts.range((n, 0, 0)..=(n, u32::MAX, u32::MAX)).map(|(_, c)| c).sum()
    }

    /// `a(n) = Σ_m counts(n, m, 0)`.
    pub fn avoiders(&self, n: u32) -> BigInt {
        self.counts.range((n, 0, 0)..=(n, u32::MAX, u32::MAX)).filter(|((_, _, r), _)| *r == 0).map(|(_, c)| c).sum()
    }

    /// Cell-by-cell comparison over the union of both supports.
    /// Returns the number of cells compared and every disagreement.
    pub fn compare(&self, actual: &OccurrenceTable) -> (usize, Vec<Mismatch>) {
        let keys: std::collections::BTreeSet<_> = self.counts.keys().chain(actual.counts.keys()).copied().collect();
        let mut mismatches = Vec::new();
        for &(n, m, r) in &keys {
            let (e, a) = (self.get(n, m, r), actual.get(n, m, r));
            if e != a {
                mismatches.push(Mismatch { n, m, r, expected: e, actual: a });
            }
        }
        (keys.len(), mismatches)
    }
}

/// Exhaustive table of pattern counts over compositions of `n <= max_n`.
pub fn brute_force_table(p: PatternId, set: &PartSet, max_n: u32) -> OccurrenceTable {
    let mut t = OccurrenceTable::empty(p, set.clone(), max_n);
    for n in 0..=max_n {
        for c in enumerate_compositions(n, set) {
            t.bump((n, c.len() as u32, count_occurrences(&c.0, p) as u32));
        }
    }
    t
}

/// Exhaustive table over words in `[k]^m` for `m <= max_m`, keyed `(0, m, r)`.
pub fn brute_force_word_table(p: PatternId, k: u32, max_m: u32) -> OccurrenceTable {
    let set = PartSet::alphabet(k.max(1)).expect("nonempty alphabet");
    let mut t = OccurrenceTable::empty(p, set, max_m);
    for m in 0..=max_m {
        for w in enumerate_words(k, m as usize) {
            t.bump((0, m, count_occurrences(&w.0, p) as u32));
        }
    }
    t
}

/// Table of pattern counts for `σ` with a sentinel part prepended:
/// `(n, m, r)` counts compositions `σ` of `n` into `m` parts from `set`
/// such that `sentinel·σ` contains `p` exactly `r` times.
pub fn sentinel_table(p: PatternId, set: &PartSet, sentinel: u32, max_n: u32) -> OccurrenceTable {
    let mut t = OccurrenceTable::empty(p, set.clone(), max_n);
    let mut buf = Vec::new();
    for n in 0..=max_n {
        for c in enumerate_compositions(n, set) {
            buf.clear();
            buf.push(sentinel);
            buf.extend_from_slice(&c.0);
            t.bump((n, c.len() as u32, count_occurrences(&buf, p) as u32));
        }
    }
    t
}

/// Total valley count over compositions of `n` into `m` parts, and total
/// peak count over compositions of `m(n+1) - n` into `m` parts from `[n]`.
/// The part map `σ_i -> n + 1 - σ_i` makes the two equal.
pub fn valley_peak_transfer(n: u32, m: usize) -> (BigInt, BigInt) {
    let valleys: BigInt = enumerate_compositions_with_len(n, m, &PartSet::nat())
        .map(|c| BigInt::from(count_occurrences(&c.0, PatternId::Valley)))
        .sum();
    if n == 0 || m == 0 {
        return (valleys, BigInt::zero());
    }
    let image = m as u32 * (n + 1) - n;
    let bounded = PartSet::alphabet(n).expect("n >= 1");
    let peaks: BigInt = enumerate_compositions_with_len(image, m, &bounded)
        .map(|c| BigInt::from(count_occurrences(&c.0, PatternId::Peak)))
        .sum();
    (valleys, peaks)
}

/// Number of compositions of `n` over `set` (Σ of a table row), by DP.
pub fn composition_count(n: u32, set: &PartSet) -> BigInt {
    let parts = set.materialize(n);
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = BigInt::one();
    for s in 1..=n as usize {
        let mut acc = BigInt::zero();
        for &a in &parts {
            if a as usize <= s {
                acc += &c[s - a as usize];
            }
        }
        c[s] = acc;
    }
    c[n as usize].clone()
}
