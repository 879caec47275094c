//! Permutations in one-line notation, inversion sets, Lehmer codes and
//! pattern containment.
//!
//! Positions and values are 1-based at every public boundary. Internally a
//! permutation stores its word as `u8` values, so `word[0]` holds `w_1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest permutation size accepted anywhere in the crate.
pub const MAX_N: usize = 20;

/// Largest pattern length supported by [`Pattern`].
pub const MAX_PATTERN_LEN: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, validating that it is a
    /// bijection on `1..=n`.
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Parse {
                token: String::new(),
                reason: "empty permutation".into(),
            });
        }
        if n > MAX_N {
            return Err(Error::SizeCap { op: "permutation", n, max: MAX_N });
        }
        let mut seen = 0u32;
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(Error::Parse {
                    token: v.to_string(),
                    reason: format!("value out of range 1..={n}"),
                });
            }
            if seen & (1 << v) != 0 {
                return Err(Error::Parse {
                    token: v.to_string(),
                    reason: "duplicate value".into(),
                });
            }
            seen |= 1 << v;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "permutation size {n} out of range");
        Self { word: (1..=n as u8).collect() }
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "permutation size {n} out of range");
        Self { word: (1..=n as u8).rev().collect() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `w_i` for 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self { word: inv }
    }

    /// Reverse the word and complement every value (`v -> n + 1 - v`).
    pub fn reverse_complement(&self) -> Self {
        let n = self.len() as u8;
        Self { word: self.word.iter().rev().map(|&v| n + 1 - v).collect() }
    }

    /// Left multiplication by the adjacent transposition `s_i`: swaps the
    /// values `i` and `i + 1`.
    pub fn swap_values(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.len());
        let (a, b) = (i as u8, i as u8 + 1);
        Self {
            word: self
                .word
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        }
    }

    /// Right multiplication by the transposition `(i, j)`: swaps the entries
    /// at positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Self { word }
    }

    /// Number of inversions.
    pub fn inv(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.len();
        let mut set = InversionSet::empty(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if self.at(i) > self.at(j) {
                    set.insert(i, j);
                }
            }
        }
        set
    }

    pub fn lehmer_code(&self) -> LehmerCode {
        let w = &self.word;
        let entries = (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count() as u8)
            .collect();
        LehmerCode { entries }
    }

    /// `prod_i (c_i(w) + 1)`.
    pub fn code_product(&self) -> Result<u64> {
        self.lehmer_code().product()
    }

    pub fn contains_pattern(&self, pattern: &Pattern) -> bool {
        let p = pattern.word();
        if p.len() > self.len() {
            return false;
        }
        let mut chosen = [0u8; MAX_PATTERN_LEN];
        contains_from(&self.word, p, &mut chosen, 0, 0)
    }

    pub fn avoids_all(&self, patterns: &[Pattern]) -> bool {
        patterns.iter().all(|p| !self.contains_pattern(p))
    }

    /// Lexicographic successor, or `None` for the longest element.
    pub fn next_lex(&self) -> Option<Self> {
        let mut word = self.word.clone();
        let n = word.len();
        let mut i = n.checked_sub(1)?;
        while i > 0 && word[i - 1] > word[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let pivot = i - 1;
        let mut j = n - 1;
        while word[j] < word[pivot] {
            j -= 1;
        }
        word.swap(pivot, j);
        word[i..].reverse();
        Some(Self { word })
    }

    /// The permutation with 0-based lexicographic rank `rank` in `S_n`.
    pub fn from_lex_rank(n: usize, mut rank: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::SizeCap { op: "from_lex_rank", n, max: MAX_N });
        }
        if rank >= factorial(n) {
            return Err(Error::Parse {
                token: rank.to_string(),
                reason: format!("rank exceeds {n}!"),
            });
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let mut word = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k);
            let idx = (rank / f) as usize;
            rank %= f;
            word.push(pool.remove(idx));
        }
        Ok(Self { word })
    }

    pub fn lex_rank(&self) -> u64 {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = self.word[i + 1..].iter().filter(|&&v| v < self.word[i]).count();
            rank += smaller_after as u64 * factorial(n - 1 - i);
        }
        rank
    }
}

fn contains_from(w: &[u8], p: &[u8], chosen: &mut [u8; MAX_PATTERN_LEN], depth: usize, start: usize) -> bool {
    let k = p.len();
    if depth == k {
        return true;
    }
    // leave room for the rest of the pattern
    let last = w.len() - (k - depth);
    for pos in start..=last {
        let v = w[pos];
        let fits = (0..depth).all(|s| (chosen[s] < v) == (p[s] < p[depth]));
        if fits {
            chosen[depth] = v;
            if contains_from(w, p, chosen, depth + 1, pos + 1) {
                return true;
            }
        }
    }
    false
}

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= MAX_N, "{n}! does not fit in 64 bits");
    (1..=n as u64).product()
}

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> Permutations {
    Permutations { next: Some(Permutation::identity(n)) }
}

pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        self.next = current.next_lex();
        Some(current)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts comma/whitespace separated values, or a bare digit string
    /// such as `25134` when `n <= 9`.
    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::Parse { token: text.to_string(), reason: "empty input".into() });
        }
        let compact = tokens.len() == 1 && tokens[0].len() > 1;
        let values: Vec<u64> = if compact {
            let t = tokens[0];
            if t.len() > 9 {
                return Err(Error::Parse {
                    token: t.to_string(),
                    reason: "compact digit notation is limited to n <= 9; separate values with commas or spaces".into(),
                });
            }
            t.chars()
                .map(|c| {
                    c.to_digit(10).map(u64::from).ok_or_else(|| Error::Parse {
                        token: c.to_string(),
                        reason: "not a digit".into(),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<u64>().map_err(|_| Error::Parse {
                        token: t.to_string(),
                        reason: "not a positive integer".into(),
                    })
                })
                .collect::<Result<_>>()?
        };
        let n = values.len();
        if n > MAX_N {
            return Err(Error::SizeCap { op: "permutation", n, max: MAX_N });
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::Parse {
                    token: v.to_string(),
                    reason: format!("value out of range 1..={n}, input is not a bijection"),
                });
            }
            if seen[v as usize] {
                return Err(Error::Parse { token: v.to_string(), reason: "duplicate value".into() });
            }
            seen[v as usize] = true;
        }
        Permutation::new(values.into_iter().map(|v| v as u8).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { "," };
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// Set of position pairs `(i, j)`, `i < j`, packed as bits in lexicographic
/// pair order. Covers every `n <= 20` (190 pair slots).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: u8,
    bits: [u64; 3],
}

impl InversionSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N);
        Self { n: n as u8, bits: [0; 3] }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        debug_assert!(1 <= i && i < j && j <= n, "pair ({i},{j}) invalid for n={n}");
        (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let s = self.slot(i, j);
        self.bits[s / 64] |= 1 << (s % 64);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        let s = self.slot(i, j);
        self.bits[s / 64] &= !(1 << (s % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        let s = self.slot(i, j);
        self.bits[s / 64] >> (s % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 3]
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Raw packed bits; slot order is lexicographic in `(i, j)`.
    pub fn bits(&self) -> [u64; 3] {
        self.bits
    }

    /// Members in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (1..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
    }

    /// Whether some permutation has exactly this inversion set: the set
    /// and its complement must both be transitive.
    pub fn is_inversion_set(&self) -> bool {
        let n = self.n();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let (ij, jk, ik) = (self.contains(i, j), self.contains(j, k), self.contains(i, k));
                    if ij && jk && !ik {
                        return false;
                    }
                    if ik && !ij && !jk {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl FromIterator<(usize, usize)> for InversionSet {
    /// Collects pairs; `n` is taken as the largest index seen.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let pairs: Vec<_> = iter.into_iter().collect();
        let n = pairs.iter().map(|&(_, j)| j).max().unwrap_or(0);
        let mut set = Self::empty(n);
        for (i, j) in pairs {
            set.insert(i, j);
        }
        set
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LehmerCode {
    entries: Vec<u8>,
}

impl LehmerCode {
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().map(|&c| c as usize).sum()
    }

    pub fn product(&self) -> Result<u64> {
        self.entries
            .iter()
            .try_fold(1u64, |acc, &c| acc.checked_mul(c as u64 + 1))
            .ok_or(Error::Overflow("code_product"))
    }

    /// `c_i(self) <= c_i(other)` for every `i`.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl Serialize for LehmerCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// A permutation of length at most [`MAX_PATTERN_LEN`] used as a pattern.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.len() > MAX_PATTERN_LEN {
            return Err(Error::Pattern(format!(
                "pattern {p} has length {} > {MAX_PATTERN_LEN}",
                p.len()
            )));
        }
        Ok(Self(p))
    }

    pub fn word(&self) -> &[u8] {
        self.0.word()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The pattern families that govern the equality cases.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PatternBundle {
    /// 231 and 312: `re = wk`, `wk = br`.
    Avoid231And312,
    /// 4231, 35142, 42513, 351624: `re = br`.
    HlssFour,
    /// 3412 and 4231: region generating function equals the Bruhat
    /// Poincaré polynomial.
    Smooth,
}

impl PatternBundle {
    pub fn words(self) -> &'static [&'static str] {
        match self {
            PatternBundle::Avoid231And312 => &["231", "312"],
            PatternBundle::HlssFour => &["4231", "35142", "42513", "351624"],
            PatternBundle::Smooth => &["3412", "4231"],
        }
    }

    pub fn patterns(self) -> Vec<Pattern> {
        self.words().iter().map(|s| s.parse().expect("built-in pattern")).collect()
    }
}
