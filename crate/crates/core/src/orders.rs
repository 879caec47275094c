//! Left weak order and Bruhat order on `S_n`: comparisons, lower intervals
//! `[id, w]` with their Poincaré polynomials, and the q-product formula for
//! 231-avoiding permutations.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{check_cap, check_same_size, Result};
use crate::perm::{permutations, Permutation};
use crate::poly::QPolynomial;

/// Size cap for weak-interval enumeration.
pub const WEAK_INTERVAL_MAX_N: usize = 12;
/// Size cap for the full-filter Bruhat interval.
pub const BRUHAT_INTERVAL_MAX_N: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IntervalSummary {
    pub size: u64,
    pub poincare: QPolynomial,
    pub max_length: usize,
}

impl IntervalSummary {
    fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I, max_length: usize) -> Self {
        let poincare = QPolynomial::from_degrees(lengths);
        let size = poincare.coeffs().iter().sum();
        Self { size, poincare, max_length }
    }
}

/// `u <= w` in the left weak order, i.e. `I(u) ⊆ I(w)`.
pub fn weak_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_same_size(u.len(), w.len())?;
    Ok(u.inversion_set().is_subset(&w.inversion_set()))
}

/// Breadth-first walk up from the identity by left multiplication with
/// adjacent transpositions, staying inside `I(w)`. Calls `visit` once per
/// element of `[id, w]`, level by level.
fn walk_weak_interval(w: &Permutation, mut visit: impl FnMut(&Permutation)) {
    let n = w.len();
    let target = w.inversion_set();
    let mut level = vec![Permutation::identity(n)];
    while !level.is_empty() {
        let mut next: HashSet<_> = HashSet::new();
        let mut next_level = Vec::new();
        for u in &level {
            visit(u);
            let pos = u.inverse();
            let current = u.inversion_set();
            for i in 1..n {
                let (a, b) = (pos.at(i), pos.at(i + 1));
                // s_i u adds exactly the inversion (a, b) when a < b
                if a < b && target.contains(a, b) {
                    let mut grown = current;
                    grown.insert(a, b);
                    if next.insert(grown) {
                        next_level.push(u.swap_values(i));
                    }
                }
            }
        }
        level = next_level;
    }
}

pub fn weak_interval(w: &Permutation) -> Result<IntervalSummary> {
    check_cap("weak_interval", w.len(), WEAK_INTERVAL_MAX_N)?;
    let mut lengths = Vec::new();
    walk_weak_interval(w, |u| lengths.push(u.inv()));
    Ok(IntervalSummary::from_lengths(lengths, w.inv()))
}

/// Elements of the weak interval `[id, w]` in lexicographic order.
pub fn weak_interval_elements(w: &Permutation) -> Result<Vec<Permutation>> {
    check_cap("weak_interval", w.len(), WEAK_INTERVAL_MAX_N)?;
    let mut out = Vec::new();
    walk_weak_interval(w, |u| out.push(u.clone()));
    out.sort();
    Ok(out)
}

/// Bitmask of the values in each prefix `w_1..w_k`, `k = 1..n`.
fn prefix_masks(w: &Permutation) -> Vec<u32> {
    let mut acc = 0u32;
    w.word()
        .iter()
        .map(|&v| {
            acc |= 1 << (v - 1);
            acc
        })
        .collect()
}

/// Bruhat comparison by the prefix dominance (tableau) criterion: for every
/// `k`, the decreasingly sorted prefix `u_1..u_k` is entrywise at most that
/// of `w`. Equivalently, every prefix of `u` has at most as many values
/// `>= j` as the same prefix of `w`, for all `j`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_same_size(u.len(), w.len())?;
    let n = u.len();
    let (pu, pw) = (prefix_masks(u), prefix_masks(w));
    for k in 0..n.saturating_sub(1) {
        for j in 1..n {
            let high = !((1u32 << j) - 1);
            if (pu[k] & high).count_ones() > (pw[k] & high).count_ones() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn bruhat_interval(w: &Permutation) -> Result<IntervalSummary> {
    check_cap("bruhat_interval", w.len(), BRUHAT_INTERVAL_MAX_N)?;
    let table = BruhatTable::new(w.len())?;
    Ok(table.interval(&table.key(w)))
}

/// Elements of the Bruhat interval `[id, w]` in lexicographic order.
pub fn bruhat_interval_elements(w: &Permutation) -> Result<Vec<Permutation>> {
    check_cap("bruhat_interval", w.len(), BRUHAT_INTERVAL_MAX_N)?;
    let mut out = Vec::new();
    for u in permutations(w.len()) {
        if bruhat_leq(&u, w)? {
            out.push(u);
        }
    }
    Ok(out)
}

const KEY_LEN: usize = 64;

/// Dominance counts `#{a <= k : u_a > j}` for `k, j < n`, flattened so that
/// `u <= w` in Bruhat order iff the keys compare entrywise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DominanceKey {
    counts: [u8; KEY_LEN],
    inv: u8,
}

impl DominanceKey {
    #[inline]
    pub fn leq(&self, other: &Self) -> bool {
        self.inv <= other.inv && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn inv(&self) -> usize {
        self.inv as usize
    }
}

/// Dominance keys for all of `S_n` in lexicographic order, so that every
/// Bruhat interval can be read off with one pass of entrywise comparisons.
pub struct BruhatTable {
    n: usize,
    keys: Vec<DominanceKey>,
}

impl BruhatTable {
    pub fn new(n: usize) -> Result<Self> {
        check_cap("bruhat_interval", n, BRUHAT_INTERVAL_MAX_N)?;
        let keys = permutations(n).map(|u| Self::key_for(n, &u)).collect();
        Ok(Self { n, keys })
    }

    fn key_for(n: usize, u: &Permutation) -> DominanceKey {
        let masks = prefix_masks(u);
        let mut counts = [0u8; KEY_LEN];
        let mut idx = 0;
        for mask in masks.iter().take(n.saturating_sub(1)) {
            for j in 1..n {
                counts[idx] = (mask >> j).count_ones() as u8;
                idx += 1;
            }
        }
        DominanceKey { counts, inv: u.inv() as u8 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key(&self, w: &Permutation) -> DominanceKey {
        assert_eq!(w.len(), self.n);
        Self::key_for(self.n, w)
    }

    pub fn keys(&self) -> &[DominanceKey] {
        &self.keys
    }

    pub fn interval(&self, top: &DominanceKey) -> IntervalSummary {
        let lengths = self.keys.iter().filter(|k| k.leq(top)).map(|k| k.inv());
        IntervalSummary::from_lengths(lengths, top.inv())
    }
}

/// `prod_i [c_i(w) + 1]`.
pub fn product_q_formula(w: &Permutation) -> Result<QPolynomial> {
    w.lehmer_code()
        .entries()
        .iter()
        .try_fold(QPolynomial::one(), |acc, &c| acc.checked_mul(&QPolynomial::q_integer(c as usize + 1)))
}

/// Componentwise `c(u) <= c(w)`, the necessary condition for `u <= w` in
/// weak order.
pub fn code_monotone_check(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_same_size(u.len(), w.len())?;
    Ok(u.lehmer_code().le_componentwise(&w.lehmer_code()))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Reduction231 {
    /// `(i, j, j + 1)`, 1-based.
    pub triple: (usize, usize, usize),
    pub reduced: Permutation,
}

/// For `w` containing 231, finds the lexicographically smallest triple
/// `(i, j, j+1)` with `w_{j+1} < w_i < w_j`, and builds `w'` by keeping
/// `w_1..w_{j-1}`, placing `w_{j+1}` at position `j`, then filling positions
/// `j+1..n` with the values `{w_j, w_{j+2}, .., w_n}` arranged in the relative
/// order of `w_{j+1} w_{j+2} .. w_n`.
///
/// The result has a strictly smaller code (only entry `j` drops) yet
/// `(i, j)` is an inversion of `w'` and not of `w`.
pub fn witness_231_reduction(w: &Permutation) -> Option<Reduction231> {
    let n = w.len();
    let (i, j) = (1..=n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| w.at(j + 1) < w.at(i) && w.at(i) < w.at(j))?;

    let word = w.word();
    let tail = &word[j..]; // w_{j+1} .. w_n
    let mut pool: Vec<u8> = std::iter::once(word[j - 1]).chain(word[j + 1..].iter().copied()).collect();
    pool.sort_unstable();
    let arranged = tail.iter().map(|&v| pool[tail.iter().filter(|&&t| t < v).count()]);

    let reduced: Vec<u8> = word[..j - 1]
        .iter()
        .copied()
        .chain(std::iter::once(word[j]))
        .chain(arranged)
        .collect();
    let reduced = Permutation::new(reduced).expect("reduction preserves the value set");
    Some(Reduction231 { triple: (i, j, j + 1), reduced })
}
