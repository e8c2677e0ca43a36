//! Dense bit-indexed sets of nonnegative integers and their sumset arithmetic.
//!
//! `IntSet` is the universe for everything discrete in this crate: sumsets,
//! k-fold sums, prefix restrictions and the progression statistics
//! (`gcd*`, `N_A`) that the classification and stability modules consume.
//! Values are immutable once built; every operation returns a fresh set.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default ceiling on the largest element a parsed set may contain.
///
/// Everything in the verification suites lives far below this; it exists so
/// a typo like `0-400000000` fails fast instead of allocating gigabytes.
pub const DEFAULT_MAX_ELEMENT: u32 = 4096;

/// Absolute ceiling for elements produced by sumset/k-fold arithmetic
/// (2^22 bits = 512 KiB of backing storage per set).
pub const HARD_MAX_ELEMENT: u32 = 1 << 22;

const WORD_BITS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("empty set")]
    Empty,
    #[error("k must be positive")]
    KMustBePositive,
    #[error("element {element} exceeds capacity {capacity}")]
    CapacityExceeded { element: u64, capacity: u32 },
    #[error("invalid set literal: {0}")]
    InvalidLiteral(String),
}

/// A finite set of nonnegative integers, stored as a bit vector.
///
/// Canonical form: no trailing zero words, so structural equality is set
/// equality. Iteration is strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntSet {
    words: Vec<u64>,
}

impl IntSet {
    pub fn new() -> Self {
        IntSet { words: Vec::new() }
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut s = IntSet::new();
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: u32) {
        let w = (x / WORD_BITS) as usize;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (x % WORD_BITS);
    }

    pub fn remove(&mut self, x: u32) {
        let w = (x / WORD_BITS) as usize;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (x % WORD_BITS));
            self.trim();
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        let w = (x / WORD_BITS) as usize;
        w < self.words.len() && self.words[w] & (1u64 << (x % WORD_BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_elem(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * WORD_BITS + w.trailing_zeros());
            }
        }
        None
    }

    pub fn max_elem(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i as u32 * WORD_BITS + (63 - w.leading_zeros()));
            }
        }
        None
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// `self ∩ [lo, hi]`. Empty when the window misses the set or `hi < lo`.
    pub fn intersect_range(&self, lo: u32, hi: u32) -> IntSet {
        if hi < lo {
            return IntSet::new();
        }
        let mut out = self.clone();
        let hi_word = (hi / WORD_BITS) as usize;
        out.words.truncate(hi_word + 1);
        if let Some(last) = out.words.get_mut(hi_word) {
            let keep = hi % WORD_BITS;
            if keep < 63 {
                *last &= (1u64 << (keep + 1)) - 1;
            }
        }
        let lo_word = (lo / WORD_BITS) as usize;
        for w in out.words.iter_mut().take(lo_word) {
            *w = 0;
        }
        if let Some(first) = out.words.get_mut(lo_word) {
            *first &= !0u64 << (lo % WORD_BITS);
        }
        out.trim();
        out
    }

    /// `{x + t : x ∈ self}`.
    pub fn translate(&self, t: u32) -> IntSet {
        let mut out = IntSet::new();
        shift_or(&mut out.words, &self.words, t);
        out.trim();
        out
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w |= s;
        }
        IntSet { words }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

pub struct Iter<'a> {
    set: &'a IntSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.word_idx as u32 * WORD_BITS + bit);
            }
            self.word_idx += 1;
            self.current = *self.set.words.get(self.word_idx)?;
        }
    }
}

impl FromIterator<u32> for IntSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        IntSet::from_elements(iter)
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// `dst |= src << shift`, word-level.
fn shift_or(dst: &mut Vec<u64>, src: &[u64], shift: u32) {
    let word_shift = (shift / WORD_BITS) as usize;
    let bit_shift = shift % WORD_BITS;
    let needed = src.len() + word_shift + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    if bit_shift == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + word_shift] |= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + word_shift] |= w << bit_shift;
            dst[i + word_shift + 1] |= w >> (WORD_BITS - bit_shift);
        }
    }
}

/// Minkowski sum `{x + y : x ∈ a, y ∈ b}`.
///
/// Shift-or kernel: for each element of the smaller operand, OR in the
/// larger operand shifted by it, so the cost is |small| · words(big).
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet, SetError> {
    if a.is_empty() || b.is_empty() {
        return Err(SetError::Empty);
    }
    let bound = a.max_elem().unwrap() as u64 + b.max_elem().unwrap() as u64;
    if bound > HARD_MAX_ELEMENT as u64 {
        return Err(SetError::CapacityExceeded {
            element: bound,
            capacity: HARD_MAX_ELEMENT,
        });
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = IntSet::new();
    out.words.resize((bound / WORD_BITS as u64 + 1) as usize, 0);
    for x in small.iter() {
        shift_or(&mut out.words, &big.words, x);
    }
    out.trim();
    Ok(out)
}

/// Minkowski sum of `k` copies of `a`; `k_fold_sum(a, 1) = a`.
pub fn k_fold_sum(a: &IntSet, k: u32) -> Result<IntSet, SetError> {
    if k == 0 {
        return Err(SetError::KMustBePositive);
    }
    if a.is_empty() {
        return Err(SetError::Empty);
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// Progression statistics of a nonempty set.
///
/// `gcd_star` is gcd(A − min A) with the convention that a singleton has
/// gcd_star 1, keeping `n_a = diam / gcd_star` total. `n_a` is the minimal
/// progression length (minus one) over arithmetic progressions containing A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetStats {
    pub min: u32,
    pub max: u32,
    pub diam: u32,
    pub gcd_star: u32,
    pub n_a: u32,
    pub cardinality: usize,
}

pub fn stats(a: &IntSet) -> Result<SetStats, SetError> {
    let min = a.min_elem().ok_or(SetError::Empty)?;
    let max = a.max_elem().unwrap();
    let diam = max - min;
    let mut g = 0u32;
    for x in a.iter() {
        g = gcd(g, x - min);
    }
    let gcd_star = if g == 0 { 1 } else { g };
    Ok(SetStats {
        min,
        max,
        diam,
        gcd_star,
        n_a: diam / gcd_star,
        cardinality: a.len(),
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `{(x − min) / gcd_star : x ∈ a}`: translated to start at 0 and divided
/// through by the progression step. The result has min 0 and gcd_star 1.
pub fn normalize(a: &IntSet) -> Result<IntSet, SetError> {
    let st = stats(a)?;
    Ok(a.iter().map(|x| (x - st.min) / st.gcd_star).collect())
}

/// `a ∩ [0, x]`; empty when `x < 0`.
pub fn prefix(a: &IntSet, x: i64) -> IntSet {
    if x < 0 {
        return IntSet::new();
    }
    let hi = x.min(u32::MAX as i64) as u32;
    a.intersect_range(0, hi)
}

pub fn prefix_count(a: &IntSet, x: i64) -> usize {
    prefix(a, x).len()
}

/// Parses the set literal grammar: comma-separated items, each either an
/// integer or an inclusive range `a-b` of consecutive integers. Whitespace
/// is ignored, overlap between items is allowed (union semantics),
/// descending ranges are rejected.
pub fn parse_set_literal(input: &str, max_element: u32) -> Result<IntSet, SetError> {
    let mut out = IntSet::new();
    let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(SetError::InvalidLiteral("empty literal".into()));
    }
    for item in cleaned.split(',') {
        if item.is_empty() {
            return Err(SetError::InvalidLiteral(format!(
                "empty item in \"{input}\""
            )));
        }
        let parse_int = |s: &str| -> Result<u32, SetError> {
            s.parse::<u32>()
                .map_err(|_| SetError::InvalidLiteral(format!("bad integer \"{s}\"")))
        };
        let (lo, hi) = match item.split_once('-') {
            Some((l, h)) => (parse_int(l)?, parse_int(h)?),
            None => {
                let v = parse_int(item)?;
                (v, v)
            }
        };
        if hi < lo {
            return Err(SetError::InvalidLiteral(format!(
                "descending range \"{item}\""
            )));
        }
        if hi > max_element {
            return Err(SetError::CapacityExceeded {
                element: hi as u64,
                capacity: max_element,
            });
        }
        for v in lo..=hi {
            out.insert(v);
        }
    }
    Ok(out)
}

impl FromStr for IntSet {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, SetError> {
        parse_set_literal(s, DEFAULT_MAX_ELEMENT)
    }
}

/// Formats in the literal grammar, collapsing runs of consecutive integers
/// to `a-b`. The output round-trips through the parser.
impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut run: Option<(u32, u32)> = None;
        let emit = |run: (u32, u32), f: &mut fmt::Formatter<'_>, first: &mut bool| {
            let sep = if *first { "" } else { "," };
            *first = false;
            if run.0 == run.1 {
                write!(f, "{sep}{}", run.0)
            } else {
                write!(f, "{sep}{}-{}", run.0, run.1)
            }
        };
        for x in self.iter() {
            run = match run {
                Some((lo, hi)) if x == hi + 1 => Some((lo, x)),
                Some(r) => {
                    emit(r, f, &mut first)?;
                    Some((x, x))
                }
                None => Some((x, x)),
            };
        }
        if let Some(r) = run {
            emit(r, f, &mut first)?;
        }
        Ok(())
    }
}
