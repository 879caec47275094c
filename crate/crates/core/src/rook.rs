//! South-west diagrams and rook placements on their complements.

use std::fmt;

use crate::error::{check_cap, Error, Result};
use crate::perm::{Permutation, MAX_N};

/// Size cap for [`rook_count`].
pub const ROOK_MAX_N: usize = 12;

/// A subset of the `n x n` grid. Rows and columns are 1-based, row 1 on
/// top; each row is a bitmask over columns (bit `c - 1` for column `c`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Board {
    rows: Vec<u32>,
}

impl Board {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N);
        Self { rows: vec![0; n] }
    }

    pub fn from_cells<I: IntoIterator<Item = (usize, usize)>>(n: usize, cells: I) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::SizeCap { op: "board", n, max: MAX_N });
        }
        let mut b = Self::empty(n);
        for (r, c) in cells {
            if r == 0 || c == 0 || r > n || c > n {
                return Err(Error::Board(format!("cell ({r},{c}) outside the {n}x{n} grid")));
            }
            b.rows[r - 1] |= 1 << (c - 1);
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.rows[row - 1] >> (col - 1) & 1 == 1
    }

    pub fn row_len(&self, row: usize) -> usize {
        self.rows[row - 1].count_ones() as usize
    }

    pub fn row_mask(&self, row: usize) -> u32 {
        self.rows[row - 1]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .filter(|&(r, c)| self.contains(r, c))
            .collect()
    }

    pub fn complement(&self) -> Self {
        let full = ((1u64 << self.n()) - 1) as u32;
        Self { rows: self.rows.iter().map(|r| !r & full).collect() }
    }

    /// Number of ways to place `n` non-attacking rooks on the cells of this
    /// board, i.e. the permanent of its 0/1 matrix, by inclusion–exclusion
    /// over column subsets.
    pub fn permanent(&self) -> Result<u64> {
        let n = self.n();
        check_cap("permanent", n, MAX_N)?;
        let mut total: i128 = 0;
        for cols in 0u32..(1u32 << n) {
            let mut prod: i128 = 1;
            for &row in &self.rows {
                prod *= (row & cols).count_ones() as i128;
                if prod == 0 {
                    break;
                }
            }
            if (n - cols.count_ones() as usize).is_multiple_of(2) {
                total += prod;
            } else {
                total -= prod;
            }
        }
        u64::try_from(total).map_err(|_| Error::Overflow("permanent"))
    }

    /// Right-justified Ferrers shape: weakly decreasing row lengths, each
    /// row occupying exactly its rightmost columns.
    pub fn is_right_justified_ferrers(&self) -> bool {
        let n = self.n();
        let full = ((1u64 << n) - 1) as u32;
        let flush = |len: usize| full & !(((1u64 << (n - len)) - 1) as u32);
        self.rows.windows(2).all(|p| p[0].count_ones() >= p[1].count_ones())
            && self.rows.iter().all(|&r| r == flush(r.count_ones() as usize))
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.cells()).finish()
    }
}

/// Draws the board with `#` for cells and `.` elsewhere, row 1 first.
impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.n() {
            let line: String = (1..=self.n()).map(|c| if self.contains(r, c) { '#' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `O_w = {(i, w_j) : i < j, w_i < w_j}`.
pub fn southwest_diagram(w: &Permutation) -> Board {
    let n = w.len();
    let cells = (1..=n).flat_map(|i| (i + 1..=n).filter(move |&j| w.at(i) < w.at(j)).map(move |j| (i, w.at(j))));
    Board::from_cells(n, cells).expect("diagram cells lie in the grid")
}

/// `rk(w)`: placements of `n` non-attacking rooks avoiding `O_w`.
pub fn rook_count(w: &Permutation) -> Result<u64> {
    check_cap("rook_count", w.len(), ROOK_MAX_N)?;
    southwest_diagram(w).complement().permanent()
}

/// Cells per row of the complement of `O_w`; row `i` always has
/// `c_i(w) + i` of them.
pub fn complement_row_freedom(w: &Permutation) -> Vec<usize> {
    let free = southwest_diagram(w).complement();
    (1..=w.len()).map(|r| free.row_len(r)).collect()
}
