//! Inversion graphs and the inversion hyperplane arrangement.
//!
//! Acyclic orientations are counted through the chromatic polynomial,
//! `ao(G) = |chi_G(-1)|`, computed by deletion–contraction with component
//! splitting and a memo keyed on degree-relabelled adjacency. Regions are
//! enumerated independently from the braid chambers: every region of a
//! graphical arrangement is a union of chambers `x_{s(1)} < .. < x_{s(n)}`,
//! so restricting chamber sign vectors to the edges and deduplicating
//! yields exactly the regions.

use std::collections::{BTreeSet, HashMap};

use crate::error::{check_cap, Error, Result};
use crate::perm::{permutations, Permutation};
use crate::poly::QPolynomial;

/// Vertex cap for [`count_acyclic_orientations`].
pub const AO_MAX_VERTICES: usize = 12;
/// Size cap for region enumeration (`n!` chambers).
pub const REGIONS_MAX_N: usize = 8;

/// Simple undirected graph on vertices `1..=n` stored as adjacency
/// bitmasks (bit `v - 1` set in `adj[u - 1]` for an edge `{u, v}`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<u32>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        assert!(n <= 32);
        Self { adj: vec![0; n] }
    }

    /// Builds a graph from 1-based edges; rejects loops and out-of-range
    /// endpoints. Repeated edges collapse.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > 32 {
            return Err(Error::Graph(format!("{n} vertices exceeds 32")));
        }
        let mut g = Self::edgeless(n);
        for (u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Graph(format!("edge {{{u},{v}}} outside 1..={n}")));
            }
            g.adj[u - 1] |= 1 << (v - 1);
            g.adj[v - 1] |= 1 << (u - 1);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let all = full_mask(n);
        Self { adj: (0..n).map(|u| all & !(1 << u)).collect() }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    /// Adjacency masks, 0-based.
    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    /// The graph with vertex `v` renamed to `f(v)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_edges(self.n(), self.edges().into_iter().map(|(u, v)| (f(u), f(v))))
    }
}

/// `G_w`: vertices `1..=n`, an edge `{i, j}` for every inversion `(i, j)`.
pub fn inversion_graph(w: &Permutation) -> Graph {
    Graph::from_edges(w.len(), w.inversion_set().pairs()).expect("inversion pairs are valid edges")
}

/// Integer polynomial in `k`, `coeffs[d]` multiplies `k^d`.
pub type ChromaticPolynomial = Vec<i128>;

fn poly_mul(a: &[i128], b: &[i128]) -> ChromaticPolynomial {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[i128], b: &[i128]) -> ChromaticPolynomial {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

/// `k (k-1) .. (k-n+1)`.
fn falling_factorial(n: usize) -> ChromaticPolynomial {
    (0..n).fold(vec![1], |acc, i| poly_mul(&acc, &[-(i as i128), 1]))
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

/// Keep only the vertices in `keep`, renumbering them compactly.
fn induced(adj: &[u32], keep: u32) -> Vec<u32> {
    let squeeze = |mask: u32| {
        let mut out = 0u32;
        let mut bit = 0;
        for v in 0..adj.len() {
            if keep >> v & 1 == 1 {
                out |= (mask >> v & 1) << bit;
                bit += 1;
            }
        }
        out
    };
    (0..adj.len()).filter(|&v| keep >> v & 1 == 1).map(|v| squeeze(adj[v])).collect()
}

fn component_of(adj: &[u32], start: usize) -> u32 {
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen
}

/// Relabel vertices by ascending degree (ties by index) so that graphs
/// differing only by such a relabelling share a memo entry. The key is the
/// full relabelled adjacency, so distinct keys never alias.
fn memo_key(adj: &[u32]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (adj[v].count_ones(), v));
    let mut new_index = vec![0usize; adj.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    order
        .iter()
        .map(|&old| {
            let mut mask = 0u32;
            let mut m = adj[old];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                mask |= 1 << new_index[v];
            }
            mask
        })
        .collect()
}

struct Chromatic {
    memo: HashMap<Vec<u32>, ChromaticPolynomial>,
}

impl Chromatic {
    fn solve(&mut self, adj: &[u32]) -> ChromaticPolynomial {
        let n = adj.len();
        if n == 0 {
            return vec![1];
        }
        let all = full_mask(n);
        let first = component_of(adj, 0);
        if first != all {
            // disconnected: multiply over components
            let mut rest = all;
            let mut out = vec![1];
            while rest != 0 {
                let comp = component_of(adj, rest.trailing_zeros() as usize);
                rest &= !comp;
                out = poly_mul(&out, &self.solve_connected(&induced(adj, comp)));
            }
            return out;
        }
        self.solve_connected(adj)
    }

    fn solve_connected(&mut self, adj: &[u32]) -> ChromaticPolynomial {
        let n = adj.len();
        let m = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        if n == 1 {
            return vec![0, 1];
        }
        if m == n * (n - 1) / 2 {
            return falling_factorial(n);
        }
        if m == n - 1 {
            // tree: k (k-1)^(n-1)
            return (1..n).fold(vec![0, 1], |acc, _| poly_mul(&acc, &[-1, 1]));
        }
        let key = memo_key(adj);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }

        // branch on an edge at a minimum-degree vertex
        let u = (0..n).min_by_key(|&v| adj[v].count_ones()).expect("nonempty");
        let v = adj[u].trailing_zeros() as usize;

        let mut deleted = adj.to_vec();
        deleted[u] &= !(1 << v);
        deleted[v] &= !(1 << u);

        let mut merged = adj.to_vec();
        merged[u] = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
        for (x, row) in merged.iter_mut().enumerate() {
            if x != u && x != v && adj[v] >> x & 1 == 1 {
                *row |= 1 << u;
            }
        }
        let all = full_mask(n);
        let contracted = induced(&merged, all & !(1 << v));

        let out = poly_sub(&self.solve(&deleted), &self.solve(&contracted));
        self.memo.insert(key, out.clone());
        out
    }
}

/// Chromatic polynomial of `g`, coefficients in ascending powers of `k`.
pub fn chromatic_polynomial(g: &Graph) -> ChromaticPolynomial {
    let mut solver = Chromatic { memo: HashMap::new() };
    let mut out = solver.solve(g.adjacency());
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Number of acyclic orientations, `|chi_G(-1)|`.
pub fn count_acyclic_orientations(g: &Graph) -> Result<u64> {
    check_cap("count_acyclic_orientations", g.n(), AO_MAX_VERTICES)?;
    let chi = chromatic_polynomial(g);
    let at_minus_one: i128 = chi.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c } else { -c }).sum();
    u64::try_from(at_minus_one.unsigned_abs()).map_err(|_| Error::Overflow("count_acyclic_orientations"))
}

/// The regions of `A_w`, each recorded as its sign vector over the edges
/// of `I(w)` (bit `e` set iff `x_i > x_j` on the region, `e = (i, j)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegionSet {
    n: usize,
    edges: Vec<(usize, usize)>,
    signs: BTreeSet<u64>,
}

impl RegionSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn signs(&self) -> &BTreeSet<u64> {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Regions graded by the number of hyperplanes separating them from the
    /// chamber `x_1 < x_2 < .. < x_n`, whose sign vector is all zeros.
    pub fn distance_enumerator(&self) -> QPolynomial {
        QPolynomial::from_degrees(self.signs.iter().map(|s| s.count_ones() as usize))
    }
}

pub fn regions(w: &Permutation) -> Result<RegionSet> {
    let n = w.len();
    check_cap("regions", n, REGIONS_MAX_N)?;
    let edges: Vec<_> = w.inversion_set().pairs().collect();
    // a chamber is a point x with x_i = rank(i); bit e records x_i > x_j
    let signs = permutations(n)
        .map(|rank| {
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &(i, j))| rank.at(i) > rank.at(j))
                .fold(0u64, |acc, (e, _)| acc | 1 << e)
        })
        .collect();
    Ok(RegionSet { n, edges, signs })
}

/// `R_w(q)`: regions of `A_w` graded by distance from the identity chamber.
pub fn distance_enumerator(w: &Permutation) -> Result<QPolynomial> {
    Ok(regions(w)?.distance_enumerator())
}
