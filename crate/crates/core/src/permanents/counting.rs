//! Counting reduced Latin squares and Latin rectangles by backtracking.
//!
//! A reduced `r x n` rectangle has first row `0, 1, ..., n-1` and first
//! column `0, 1, ..., r-1`. The search fills the remaining cells in row-major
//! order with 16-bit masks of the symbols used in each row and column. For
//! squares the last row is never searched: after `n - 1` rows each column
//! misses exactly one symbol and those symbols form the last row.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::factorial;
use crate::error::{Error, Result};
use crate::latin::LatinSquare;

/// Largest order for the mask kernel.
pub const MAX_KERNEL_ORDER: usize = 16;

/// Largest order accepted by the square and full rectangle counts.
pub const MAX_COUNT_ORDER: usize = 7;

struct Filler {
    n: usize,
    full: u16,
    cells: Vec<(usize, usize)>,
}

#[derive(Clone)]
struct State {
    rows: Vec<u16>,
    cols: Vec<u16>,
}

impl Filler {
    fn new(r: usize, n: usize) -> Result<(Self, State)> {
        if r > n {
            return Err(Error::RectangleTooLarge {
                rows: r,
                cols: n,
                order: n,
            });
        }
        if n > MAX_KERNEL_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_KERNEL_ORDER,
            });
        }
        let searched = if r == n { r.saturating_sub(1) } else { r };
        let cells = (1..searched)
            .flat_map(|i| (1..n).map(move |j| (i, j)))
            .collect();
        let full = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        let mut state = State {
            rows: vec![0; r],
            cols: vec![0; n],
        };
        if r > 0 {
            state.rows[0] = full;
            for (j, c) in state.cols.iter_mut().enumerate() {
                *c |= 1 << j;
            }
            for i in 1..r {
                state.rows[i] |= 1 << i;
                state.cols[0] |= 1 << i;
            }
        }
        Ok((Self { n, full, cells }, state))
    }

    fn count(&self, p: usize, s: &mut State) -> u64 {
        if p == self.cells.len() {
            return 1;
        }
        let (i, j) = self.cells[p];
        let mut avail = !(s.rows[i] | s.cols[j]) & self.full;
        let mut total = 0;
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail ^= bit;
            s.rows[i] |= bit;
            s.cols[j] |= bit;
            total += self.count(p + 1, s);
            s.rows[i] ^= bit;
            s.cols[j] ^= bit;
        }
        total
    }

    /// Every partial state after the first `depth` cells.
    fn prefixes(&self, p: usize, depth: usize, s: &mut State, out: &mut Vec<State>) {
        if p == depth {
            out.push(s.clone());
            return;
        }
        let (i, j) = self.cells[p];
        let mut avail = !(s.rows[i] | s.cols[j]) & self.full;
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail ^= bit;
            s.rows[i] |= bit;
            s.cols[j] |= bit;
            self.prefixes(p + 1, depth, s, out);
            s.rows[i] ^= bit;
            s.cols[j] ^= bit;
        }
    }

    fn walk<F>(&self, p: usize, s: &mut State, grid: &mut [u8], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&LatinSquare) -> ControlFlow<()>,
    {
        if p == self.cells.len() {
            let n = self.n;
            for j in 1..n {
                grid[(n - 1) * n + j] = (!s.cols[j] & self.full).trailing_zeros() as u8;
            }
            let sq = LatinSquare::from_cells(n, grid.to_vec())
                .expect("search keeps rows and columns Latin");
            return visit(&sq);
        }
        let (i, j) = self.cells[p];
        let mut avail = !(s.rows[i] | s.cols[j]) & self.full;
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail ^= bit;
            s.rows[i] |= bit;
            s.cols[j] |= bit;
            grid[i * self.n + j] = bit.trailing_zeros() as u8;
            let flow = self.walk(p + 1, s, grid, visit);
            s.rows[i] ^= bit;
            s.cols[j] ^= bit;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn count_parallel(&self, mut start: State) -> u64 {
        // split after the second row is filled
        let depth = self.cells.len().min(self.n.saturating_sub(1));
        let mut states = Vec::new();
        self.prefixes(0, depth, &mut start, &mut states);
        states
            .into_par_iter()
            .map(|mut s| self.count(depth, &mut s))
            .sum()
    }
}

/// Number of reduced `r x n` Latin rectangles.
pub fn count_reduced_rectangles(r: usize, n: usize) -> Result<u64> {
    let (f, mut s) = Filler::new(r, n)?;
    Ok(f.count(0, &mut s))
}

/// [`count_reduced_rectangles`] with the search split after the second row
/// and run on the current rayon pool.
pub fn count_reduced_rectangles_parallel(r: usize, n: usize) -> Result<u64> {
    let (f, s) = Filler::new(r, n)?;
    Ok(f.count_parallel(s))
}

fn check_count_order(n: usize) -> Result<()> {
    if n > MAX_COUNT_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_COUNT_ORDER,
        });
    }
    Ok(())
}

/// `ℓ(n)`, the number of reduced Latin squares of order `n ≤ 7`.
pub fn count_reduced_squares(n: usize) -> Result<u64> {
    check_count_order(n)?;
    count_reduced_rectangles(n, n)
}

pub fn count_reduced_squares_parallel(n: usize) -> Result<u64> {
    check_count_order(n)?;
    count_reduced_rectangles_parallel(n, n)
}

/// Calls `visit` on every reduced Latin square of order `n ≤ 7`, in
/// row-major lexicographic order, until it breaks.
pub fn for_each_reduced_square<F>(n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&LatinSquare) -> ControlFlow<()>,
{
    check_count_order(n)?;
    if n == 0 {
        return Ok(());
    }
    let (f, mut s) = Filler::new(n, n)?;
    let mut grid = vec![0u8; n * n];
    for k in 0..n {
        grid[k] = k as u8;
        grid[k * n] = k as u8;
    }
    let _ = f.walk(0, &mut s, &mut grid, &mut visit);
    Ok(())
}

/// All reduced Latin squares of order `n ≤ 6`.
pub fn reduced_squares(n: usize) -> Result<Vec<LatinSquare>> {
    if n > 6 {
        return Err(Error::OrderTooLarge { order: n, max: 6 });
    }
    let mut out = Vec::new();
    for_each_reduced_square(n, |sq| {
        out.push(sq.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of `r x n` Latin rectangles, `n ≤ 7`. With `normalized`, only
/// those whose first row is `0, 1, ..., n-1`.
///
/// Renaming symbols and columns by the same permutation fixing 0 moves any
/// first column to any other, so a normalized rectangle count is
/// `(n-1)!/(n-r)!` times the reduced count, and permuting columns gives
/// another factor `n!` for all rectangles.
pub fn count_rectangles(r: usize, n: usize, normalized: bool) -> Result<BigUint> {
    check_count_order(n)?;
    let reduced = count_reduced_rectangles_parallel(r, n)?;
    if r == 0 {
        return Ok(BigUint::from(1u32));
    }
    let first_columns = factorial(n - 1) / factorial(n - r);
    let normal = first_columns * reduced;
    Ok(if normalized {
        normal
    } else {
        normal * factorial(n)
    })
}
