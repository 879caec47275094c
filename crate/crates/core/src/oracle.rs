//! Slow, definitional reference implementations. None of these share code
//! paths with the fast routines they are compared against.

use std::collections::{HashSet, VecDeque};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{count_acyclic_orientations, inversion_graph, regions, Graph};
use crate::error::{check_cap, check_same_size, Error, Result};
use crate::orders::{bruhat_leq, weak_interval};
use crate::perm::{permutations, Pattern, Permutation};
use crate::poly::QPolynomial;
use crate::rook::{rook_count, southwest_diagram, Board};

/// Edge cap for [`acyclic_orientations_brute`] (`2^m` orientations).
pub const BRUTE_MAX_EDGES: usize = 20;

/// The Bruhat lower interval `[id, w]` as the closure of `w` under
/// transpositions that drop the inversion count by exactly one.
pub fn bruhat_down_set(w: &Permutation) -> HashSet<Permutation> {
    let n = w.len();
    let mut seen = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        let len = v.inv();
        for i in 1..=n {
            for j in i + 1..=n {
                let t = v.swap_positions(i, j);
                if t.inv() + 1 == len && seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

pub fn bruhat_leq_by_chains(u: &Permutation, w: &Permutation) -> Result<bool> {
    check_same_size(u.len(), w.len())?;
    Ok(bruhat_down_set(w).contains(u))
}

fn is_acyclic(n: usize, out: &[u32]) -> bool {
    let mut alive = ((1u64 << n) - 1) as u32;
    loop {
        if alive == 0 {
            return true;
        }
        // a source has no live in-neighbours
        let targets = (0..n).filter(|&v| alive >> v & 1 == 1).fold(0u32, |acc, v| acc | out[v]) & alive;
        let sources = alive & !targets;
        if sources == 0 {
            return false;
        }
        alive &= !sources;
    }
}

/// Counts acyclic orientations by trying all `2^m` of them.
pub fn acyclic_orientations_brute(g: &Graph) -> Result<u64> {
    let edges = g.edges();
    if edges.len() > BRUTE_MAX_EDGES {
        return Err(Error::SizeCap { op: "acyclic_orientations_brute", n: edges.len(), max: BRUTE_MAX_EDGES });
    }
    let n = g.n();
    let mut count = 0;
    let mut out = vec![0u32; n];
    for choice in 0u64..(1u64 << edges.len()) {
        out.iter_mut().for_each(|o| *o = 0);
        for (e, &(a, b)) in edges.iter().enumerate() {
            let (from, to) = if choice >> e & 1 == 0 { (a, b) } else { (b, a) };
            out[from - 1] |= 1 << (to - 1);
        }
        if is_acyclic(n, &out) {
            count += 1;
        }
    }
    Ok(count)
}

/// Counts placements of `n` non-attacking rooks on the board's cells by
/// row-by-row backtracking.
pub fn rook_placements_backtrack(board: &Board) -> u64 {
    fn place(board: &Board, row: usize, used: u32) -> u64 {
        if row > board.n() {
            return 1;
        }
        (1..=board.n())
            .filter(|&c| used >> (c - 1) & 1 == 0 && board.contains(row, c))
            .map(|c| place(board, row + 1, used | 1 << (c - 1)))
            .sum()
    }
    place(board, 1, 0)
}

/// Weak interval `[id, w]` by filtering all of `S_n` with `I(u) ⊆ I(w)`.
/// Returns the size and the Poincaré polynomial.
pub fn weak_interval_by_filter(w: &Permutation) -> Result<(u64, QPolynomial)> {
    check_cap("weak_interval_by_filter", w.len(), 9)?;
    let target = w.inversion_set();
    let lengths: Vec<usize> =
        permutations(w.len()).filter(|u| u.inversion_set().is_subset(&target)).map(|u| u.inv()).collect();
    Ok((lengths.len() as u64, QPolynomial::from_degrees(lengths)))
}

/// Pattern containment by trying every `C(n, k)` position subset.
pub fn contains_pattern_naive(w: &Permutation, p: &Permutation) -> bool {
    let (n, k) = (w.len(), p.len());
    if k > n {
        return false;
    }
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).any(|m| {
        let sub: Vec<u8> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| w.word()[i]).collect();
        (0..k).all(|a| (0..k).all(|b| (sub[a] < sub[b]) == (p.word()[a] < p.word()[b])))
    })
}

/// `count` random simple graphs on 2..=8 vertices with at most 16 edges,
/// reproducible from `seed`.
pub fn seeded_random_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=8usize);
            let slots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
            let m = rng.random_range(0..=slots.len().min(16));
            let chosen = sample(&mut rng, slots.len(), m);
            Graph::from_edges(n, chosen.into_iter().map(|k| slots[k])).expect("valid random edges")
        })
        .collect()
}

pub const RANDOM_GRAPH_SEED: u64 = 0x0a0c_2024;
pub const RANDOM_GRAPH_COUNT: usize = 50;

/// Result of comparing one fast routine with its reference.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    /// `None` when `n` exceeds what the reference can handle.
    pub cases: Option<u64>,
    pub mismatches: Vec<String>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn skipped(&self) -> bool {
        self.cases.is_none()
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    mismatches: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, mismatches: Vec::new() }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: impl std::fmt::Display, fast: T, slow: T) {
        self.cases += 1;
        if fast != slow && self.mismatches.len() < 20 {
            self.mismatches.push(format!("{what}: fast={fast:?} oracle={slow:?}"));
        }
    }

    fn done(self) -> OracleCheck {
        OracleCheck { name: self.name, cases: Some(self.cases), mismatches: self.mismatches }
    }
}

fn skipped(name: &'static str) -> OracleCheck {
    OracleCheck { name, cases: None, mismatches: Vec::new() }
}

/// Runs every fast-path-versus-reference comparison over `S_n`. Checks
/// whose reference is too slow at this `n` are reported as skipped.
pub fn run_oracle_checks(n: usize) -> Result<Vec<OracleCheck>> {
    check_cap("oracle_checks", n, 8)?;
    if n == 0 {
        return Err(Error::SizeCap { op: "oracle_checks", n, max: 8 });
    }
    let all: Vec<Permutation> = permutations(n).collect();
    let mut out = Vec::new();

    out.push(if n <= 6 {
        let mut t = Tally::new("bruhat_dominance_vs_chain_closure");
        for w in &all {
            let down = bruhat_down_set(w);
            for u in &all {
                t.expect(format_args!("{u} <= {w}"), bruhat_leq(u, w)?, down.contains(u));
            }
        }
        t.done()
    } else {
        skipped("bruhat_dominance_vs_chain_closure")
    });

    let mut t = Tally::new("deletion_contraction_vs_orientation_enumeration");
    for w in &all {
        let g = inversion_graph(w);
        if g.edge_count() <= 16 {
            t.expect(format_args!("G_{w}"), count_acyclic_orientations(&g)?, acyclic_orientations_brute(&g)?);
        }
    }
    for (k, g) in seeded_random_graphs(RANDOM_GRAPH_SEED, RANDOM_GRAPH_COUNT).iter().enumerate() {
        t.expect(format_args!("random graph #{k} {:?}", g.edges()), count_acyclic_orientations(g)?, acyclic_orientations_brute(g)?);
    }
    out.push(t.done());

    let mut t = Tally::new("permanent_vs_rook_backtracking");
    for w in &all {
        let free = southwest_diagram(w).complement();
        t.expect(format_args!("{w}"), rook_count(w)?, rook_placements_backtrack(&free));
    }
    out.push(t.done());

    out.push(if n <= 7 {
        let mut t = Tally::new("weak_bfs_vs_subset_filter");
        for w in &all {
            let bfs = weak_interval(w)?;
            t.expect(format_args!("{w}"), (bfs.size, bfs.poincare), weak_interval_by_filter(w)?);
        }
        t.done()
    } else {
        skipped("weak_bfs_vs_subset_filter")
    });

    out.push(if n <= 7 {
        let mut t = Tally::new("regions_vs_acyclic_orientations");
        for w in &all {
            t.expect(format_args!("{w}"), count_acyclic_orientations(&inversion_graph(w))?, regions(w)?.len() as u64);
        }
        t.done()
    } else {
        skipped("regions_vs_acyclic_orientations")
    });

    out.push(if n <= 7 {
        let mut t = Tally::new("pattern_backtracking_vs_subsequence_scan");
        let patterns: Vec<Pattern> = (1..=n.min(4))
            .flat_map(permutations)
            .chain(["35142", "42513", "351624"].iter().map(|s| s.parse().expect("literal")))
            .map(|p| Pattern::new(p).expect("short pattern"))
            .collect();
        for w in &all {
            for p in &patterns {
                t.expect(format_args!("{w} ⊇ {p}"), w.contains_pattern(p), contains_pattern_naive(w, p.as_permutation()));
            }
        }
        t.done()
    } else {
        skipped("pattern_backtracking_vs_subsequence_scan")
    });

    Ok(out)
}
