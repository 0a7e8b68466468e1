//! Transversals of Latin squares: counting, listing, the parity and
//! existence questions, and decompositions into disjoint transversals.
//!
//! The kernel walks the rows in order and keeps two 16-bit masks, one for
//! used columns and one for used symbols, so squares of order up to
//! [`MAX_TRANSVERSAL_ORDER`] are supported. Columns are tried in increasing
//! order, which lists transversals lexicographically by their column
//! sequence (and so first by the column used in row 0).

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_cover::ExactCover;
use crate::latin::{LatinSquare, Path, Transversal};
use crate::mols::are_orthogonal;

pub const MAX_TRANSVERSAL_ORDER: usize = 16;

struct Kernel {
    n: usize,
    cells: Vec<u8>,
}

impl Kernel {
    fn new(sq: &LatinSquare) -> Result<Self> {
        let n = sq.order();
        if n > MAX_TRANSVERSAL_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_TRANSVERSAL_ORDER,
            });
        }
        Ok(Self {
            n,
            cells: sq.cells().to_vec(),
        })
    }

    fn full(&self) -> u16 {
        if self.n == 16 {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    fn count_from(&self, row: usize, cols: u16, syms: u16) -> u64 {
        if row == self.n {
            return 1;
        }
        let base = row * self.n;
        let mut free = !cols & self.full();
        if row + 1 == self.n {
            let j = free.trailing_zeros() as usize;
            return u64::from(syms & (1 << self.cells[base + j]) == 0);
        }
        let mut total = 0;
        while free != 0 {
            let j = free.trailing_zeros() as usize;
            free &= free - 1;
            let bit = 1u16 << self.cells[base + j];
            if syms & bit == 0 {
                total += self.count_from(row + 1, cols | (1 << j), syms | bit);
            }
        }
        total
    }

    fn walk<F>(
        &self,
        row: usize,
        cols: u16,
        syms: u16,
        path: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if row == self.n {
            return visit(path);
        }
        let base = row * self.n;
        let mut free = !cols & self.full();
        while free != 0 {
            let j = free.trailing_zeros() as usize;
            free &= free - 1;
            let bit = 1u16 << self.cells[base + j];
            if syms & bit == 0 {
                path.push(j);
                let flow = self.walk(row + 1, cols | (1 << j), syms | bit, path, visit);
                path.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    fn transversal(&self, cols: &[usize]) -> Transversal {
        let symbols = cols
            .iter()
            .enumerate()
            .map(|(i, &j)| self.cells[i * self.n + j])
            .collect();
        Transversal::from_parts_unchecked(Path::new(cols.to_vec()).expect("kernel path"), symbols)
    }

    /// Transversals whose row-0 cell is in column `j0`, in canonical order.
    fn list_branch(&self, j0: usize) -> Vec<Transversal> {
        let mut out = Vec::new();
        let mut path = vec![j0];
        let _ = self.walk(1, 1 << j0, 1 << self.cells[j0], &mut path, &mut |p| {
            out.push(self.transversal(p));
            ControlFlow::Continue(())
        });
        out
    }

    fn count_branch(&self, j0: usize) -> u64 {
        self.count_from(1, 1 << j0, 1 << self.cells[j0])
    }
}

/// Number of transversals.
pub fn count_transversals(sq: &LatinSquare) -> Result<u64> {
    let k = Kernel::new(sq)?;
    Ok(k.count_from(0, 0, 0))
}

/// [`count_transversals`] with the row-0 branches searched on the current
/// rayon pool.
pub fn count_transversals_parallel(sq: &LatinSquare) -> Result<u64> {
    let k = Kernel::new(sq)?;
    if k.n == 0 {
        return Ok(1);
    }
    Ok((0..k.n).into_par_iter().map(|j| k.count_branch(j)).sum())
}

/// All transversals of a square in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalSet {
    square: LatinSquare,
    transversals: Vec<Transversal>,
}

impl TransversalSet {
    pub fn square(&self) -> &LatinSquare {
        &self.square
    }

    pub fn transversals(&self) -> &[Transversal] {
        &self.transversals
    }

    pub fn len(&self) -> usize {
        self.transversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversals.is_empty()
    }

    pub fn into_vec(self) -> Vec<Transversal> {
        self.transversals
    }
}

pub fn enumerate_transversals(sq: &LatinSquare) -> Result<TransversalSet> {
    let k = Kernel::new(sq)?;
    let mut transversals = Vec::new();
    let _ = k.walk(0, 0, 0, &mut Vec::with_capacity(k.n), &mut |p| {
        transversals.push(k.transversal(p));
        ControlFlow::Continue(())
    });
    Ok(TransversalSet {
        square: sq.clone(),
        transversals,
    })
}

/// [`enumerate_transversals`] with row-0 branches listed in parallel and
/// concatenated in column order, so the result is identical.
pub fn enumerate_transversals_parallel(sq: &LatinSquare) -> Result<TransversalSet> {
    let k = Kernel::new(sq)?;
    if k.n == 0 {
        return enumerate_transversals(sq);
    }
    let branches: Vec<Vec<Transversal>> =
        (0..k.n).into_par_iter().map(|j| k.list_branch(j)).collect();
    Ok(TransversalSet {
        square: sq.clone(),
        transversals: branches.concat(),
    })
}

/// First transversal in canonical order.
pub fn find_transversal(sq: &LatinSquare) -> Result<Option<Transversal>> {
    let k = Kernel::new(sq)?;
    let mut found = None;
    let _ = k.walk(0, 0, 0, &mut Vec::with_capacity(k.n), &mut |p| {
        found = Some(k.transversal(p));
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Transversal count compared with the order, modulo 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityVerdict {
    pub order: usize,
    pub count: u64,
    /// `count ≡ order (mod 2)`.
    pub consistent: bool,
}

impl ParityVerdict {
    pub fn is_counterexample(&self) -> bool {
        !self.consistent
    }
}

pub fn check_parity_conjecture(sq: &LatinSquare) -> Result<ParityVerdict> {
    let count = count_transversals(sq)?;
    let order = sq.order();
    Ok(ParityVerdict {
        order,
        count,
        consistent: count % 2 == order as u64 % 2,
    })
}

/// The main diagonal of a symmetric square of odd order, as a transversal.
///
/// Also checks the counting argument behind it: every symbol occurs an even
/// number of times off the diagonal, hence an odd number of times on it.
pub fn symmetric_diagonal_check(sq: &LatinSquare) -> Result<Transversal> {
    let n = sq.order();
    if !sq.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    let mut off = vec![0usize; n];
    let mut on = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                on[sq.get(i, j)] += 1;
            } else {
                off[sq.get(i, j)] += 1;
            }
        }
    }
    for k in 0..n {
        if !off[k].is_multiple_of(2) || on[k] != 1 {
            return Err(Error::Invariant(format!(
                "symbol {k}: {} off-diagonal, {} diagonal occurrences",
                off[k], on[k]
            )));
        }
    }
    Transversal::of(sq, Path::diagonal(n))
}

/// `n` pairwise disjoint transversals of one square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    transversals: Vec<Transversal>,
}

impl Decomposition {
    /// Checks that every member is a transversal of `sq` and that together
    /// they cover each cell exactly once.
    pub fn new(sq: &LatinSquare, transversals: Vec<Transversal>) -> Result<Self> {
        let n = sq.order();
        if transversals.len() != n {
            return Err(Error::InvalidDecomposition(format!(
                "{} transversals for order {n}",
                transversals.len()
            )));
        }
        let mut seen = vec![false; n * n];
        for (t, tr) in transversals.iter().enumerate() {
            Transversal::of(sq, tr.path().clone())
                .ok()
                .filter(|checked| checked == tr)
                .ok_or_else(|| {
                    Error::InvalidDecomposition(format!("member {t} is not a transversal"))
                })?;
            for (i, j) in tr.cells() {
                if std::mem::replace(&mut seen[i * n + j], true) {
                    return Err(Error::InvalidDecomposition(format!(
                        "cell ({i}, {j}) lies in two members"
                    )));
                }
            }
        }
        Ok(Self { transversals })
    }

    pub fn transversals(&self) -> &[Transversal] {
        &self.transversals
    }

    pub fn len(&self) -> usize {
        self.transversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversals.is_empty()
    }
}

/// Exact cover instance: items are the `n²` cells, options the transversals.
fn cover_problem(set: &TransversalSet) -> ExactCover {
    let n = set.square.order();
    let mut ec = ExactCover::new(n * n);
    for t in &set.transversals {
        let cells: Vec<usize> = t.cells().map(|(i, j)| i * n + j).collect();
        ec.add_option(&cells);
    }
    ec
}

/// First decomposition found by the exact cover search, members in canonical order.
pub fn find_decomposition(sq: &LatinSquare) -> Result<Option<Decomposition>> {
    let set = enumerate_transversals(sq)?;
    let Some(chosen) = cover_problem(&set).first_solution() else {
        return Ok(None);
    };
    let members = chosen
        .into_iter()
        .map(|o| set.transversals[o].clone())
        .collect();
    Decomposition::new(sq, members).map(Some)
}

/// Number of unordered decompositions into `n` disjoint transversals.
///
/// Each decomposition yields `n!` orthogonal mates, one per assignment of
/// symbols to its members.
pub fn count_decompositions(sq: &LatinSquare) -> Result<u64> {
    let set = enumerate_transversals(sq)?;
    Ok(cover_problem(&set).count_solutions())
}

/// Decompositions found within a search budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialCount {
    pub count: u64,
    /// Nodes allowed to the exact cover search.
    pub budget: u64,
    /// True when the search finished, so `count` is exact.
    pub complete: bool,
}

/// [`count_decompositions`] stopped after `max_nodes` search nodes; the
/// count is a lower bound unless the search completed.
pub fn count_decompositions_bounded(sq: &LatinSquare, max_nodes: u64) -> Result<PartialCount> {
    let set = enumerate_transversals(sq)?;
    let (count, complete) = cover_problem(&set).count_solutions_bounded(max_nodes);
    Ok(PartialCount {
        count,
        budget: max_nodes,
        complete,
    })
}

/// [`count_decompositions`] with the first branching level searched in parallel.
pub fn count_decompositions_parallel(sq: &LatinSquare) -> Result<u64> {
    let set = enumerate_transversals_parallel(sq)?;
    Ok(cover_problem(&set).count_solutions_parallel())
}

/// The square holding symbol `k` on every cell of the `k`-th member.
/// The result is checked to be Latin and orthogonal to `sq`.
pub fn mate_from_decomposition(sq: &LatinSquare, dec: &Decomposition) -> Result<LatinSquare> {
    let n = sq.order();
    let dec = Decomposition::new(sq, dec.transversals.clone())?;
    let mut cells = vec![0u8; n * n];
    for (k, t) in dec.transversals.iter().enumerate() {
        for (i, j) in t.cells() {
            cells[i * n + j] = k as u8;
        }
    }
    let mate = LatinSquare::from_cells(n, cells)?;
    if !are_orthogonal(sq, &mate)? {
        return Err(Error::Invariant("mate is not orthogonal".into()));
    }
    Ok(mate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{circulant3, circulant3_mate, parker_square, parker_swapped};
    use crate::mols::{complete_system, FiniteField};

    fn addition_table(n: usize) -> LatinSquare {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        LatinSquare::new(&rows).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_transversals(&LatinSquare::cyclic(1)).unwrap(), 1);
        assert_eq!(count_transversals(&LatinSquare::cyclic(2)).unwrap(), 0);
        assert_eq!(count_transversals(&circulant3()).unwrap(), 3);
        for n in [2, 4, 6, 8] {
            assert!(enumerate_transversals(&LatinSquare::cyclic(n))
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn circulant_transversals_in_canonical_order() {
        let set = enumerate_transversals(&circulant3()).unwrap();
        let cols: Vec<&[usize]> = set
            .transversals()
            .iter()
            .map(|t| t.path().columns())
            .collect();
        assert_eq!(cols, vec![&[0, 1, 2][..], &[1, 2, 0], &[2, 0, 1]]);
        assert_eq!(enumerate_transversals_parallel(&circulant3()).unwrap(), set);
    }

    #[test]
    fn parker_counts() {
        assert_eq!(count_transversals(&parker_square()).unwrap(), 5504);
        assert_eq!(count_transversals_parallel(&parker_square()).unwrap(), 5504);
        assert_eq!(count_transversals(&parker_swapped()).unwrap(), 0);
    }

    #[test]
    fn order_limit() {
        let big = LatinSquare::cyclic(17);
        assert!(matches!(
            count_transversals(&big),
            Err(Error::OrderTooLarge { .. })
        ));
        // e = 2 gives diagonal entries 3i, all distinct
        let gf16 = complete_system(&FiniteField::new(2, 4).unwrap()).unwrap();
        let t = find_transversal(&gf16.squares()[1]).unwrap().unwrap();
        assert_eq!(t.path(), &Path::diagonal(16));
    }

    #[test]
    fn parity_verdicts() {
        let v = check_parity_conjecture(&circulant3()).unwrap();
        assert!(v.consistent);
        assert_eq!(v.count, 3);
        assert!(
            check_parity_conjecture(&LatinSquare::cyclic(4))
                .unwrap()
                .consistent
        );
    }

    #[test]
    fn find_first() {
        assert_eq!(find_transversal(&LatinSquare::cyclic(2)).unwrap(), None);
        let t = find_transversal(&LatinSquare::cyclic(1)).unwrap().unwrap();
        assert_eq!(t.path().columns(), &[0]);
    }

    #[test]
    fn symmetric_diagonals() {
        for n in [3, 5, 7] {
            let t = symmetric_diagonal_check(&addition_table(n)).unwrap();
            let mut syms = t.symbols().to_vec();
            syms.sort_unstable();
            assert_eq!(syms, (0..n as u8).collect::<Vec<_>>());
        }
        assert_eq!(
            symmetric_diagonal_check(&addition_table(5))
                .unwrap()
                .symbols(),
            &[0, 2, 4, 1, 3]
        );
        assert!(matches!(
            symmetric_diagonal_check(&addition_table(4)),
            Err(Error::EvenOrder(4))
        ));
        assert!(matches!(
            symmetric_diagonal_check(&circulant3_mate()),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn circulant_decomposition_and_mate() {
        let sq = circulant3();
        let dec = find_decomposition(&sq).unwrap().unwrap();
        assert_eq!(dec.len(), 3);
        assert_eq!(
            mate_from_decomposition(&sq, &dec).unwrap(),
            circulant3_mate()
        );
        assert_eq!(count_decompositions(&sq).unwrap(), 1);
        assert_eq!(count_decompositions_parallel(&sq).unwrap(), 1);
        assert_eq!(find_decomposition(&LatinSquare::cyclic(2)).unwrap(), None);
        assert_eq!(count_decompositions(&LatinSquare::cyclic(4)).unwrap(), 0);
    }

    #[test]
    fn decomposition_validation() {
        let sq = circulant3();
        let t = find_transversal(&sq).unwrap().unwrap();
        let err = Decomposition::new(&sq, vec![t.clone(), t.clone(), t]).unwrap_err();
        assert!(matches!(err, Error::InvalidDecomposition(_)));
        assert!(Decomposition::new(&sq, vec![]).is_err());
    }

    #[test]
    fn parker_has_a_mate() {
        let sq = parker_square();
        let dec = find_decomposition(&sq).unwrap().unwrap();
        let mate = mate_from_decomposition(&sq, &dec).unwrap();
        assert!(are_orthogonal(&sq, &mate).unwrap());
    }

    #[test]
    fn bounded_decomposition_count() {
        let exact = count_decompositions(&circulant3()).unwrap();
        let bounded = count_decompositions_bounded(&circulant3(), 1_000).unwrap();
        assert_eq!((bounded.count, bounded.complete), (exact, true));
        let partial = count_decompositions_bounded(&parker_square(), 100_000).unwrap();
        assert!(!partial.complete && partial.count > 0);
    }
}
