//! Two statements about zero-one matrices, checked on concrete inputs.
//!
//! The first: if every entry of `A^T A` is positive and no 3x3 submatrix is
//! `J - P` for a permutation matrix `P`, then `A` has a row of ones. The
//! second: a symmetric `A` with `AA^T = (k - λ)I + λJ`, `0 < λ < k < v - 1`
//! and `k - λ` not a square has trace `k`.

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::matrix::ZeroOneMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem1Outcome {
    /// Index of the first row of ones.
    AllOnesRow(usize),
    /// Columns `a <= b` with no row having ones in both.
    DisjointColumns { a: usize, b: usize },
    /// A 3x3 submatrix with all line sums 2, lexicographically first.
    ForbiddenSubmatrix { rows: [usize; 3], cols: [usize; 3] },
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Checks both hypotheses and, when they hold, returns a row of ones.
pub fn problem1_analyze(a: &ZeroOneMatrix) -> Result<Problem1Outcome> {
    if a.rows() == 0 {
        return Err(Error::Empty);
    }
    let gram = a.transpose().gram();
    for (x, row) in gram.iter().enumerate() {
        if let Some(y) = (x..row.len()).find(|&y| row[y] == 0) {
            return Ok(Problem1Outcome::DisjointColumns { a: x, b: y });
        }
    }
    for rows in triples(a.rows()) {
        for cols in triples(a.cols()) {
            let sum = |i: usize| cols.iter().filter(|&&j| a.get(i, j)).count();
            let col_sum = |j: usize| rows.iter().filter(|&&i| a.get(i, j)).count();
            if rows.iter().all(|&i| sum(i) == 2) && cols.iter().all(|&j| col_sum(j) == 2) {
                return Ok(Problem1Outcome::ForbiddenSubmatrix { rows, cols });
            }
        }
    }
    (0..a.rows())
        .find(|&i| a.row_sum(i) == a.cols())
        .map(Problem1Outcome::AllOnesRow)
        .ok_or_else(|| Error::Invariant("hypotheses hold but no row is all ones".into()))
}

/// Parameters `(v, k, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    pub fn new(v: usize, k: usize, lambda: usize) -> Self {
        Self { v, k, lambda }
    }

    /// `0 < λ < k < v - 1`.
    pub fn in_range(&self) -> bool {
        0 < self.lambda && self.lambda < self.k && self.k + 1 < self.v
    }
}

/// The premise that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    /// The matrix is not `v x v`.
    Order {
        rows: usize,
        cols: usize,
    },
    NotSymmetric,
    /// `0 < λ < k < v - 1` fails.
    ParameterRange,
    /// `k - λ` is a perfect square.
    SquareDifference(usize),
    /// An entry of `AA^T` differs from `(k - λ)I + λJ`.
    GramEntry {
        row: usize,
        col: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem2Outcome {
    PremiseFailure(Premise),
    /// All premises hold; the trace equals `k` and every row sums to `k`.
    Verified {
        trace: usize,
        row_sums_k: bool,
    },
}

/// Checks the premises in order and, when they hold, the trace.
pub fn problem2_analyze(a: &ZeroOneMatrix, params: DesignParams) -> Result<Problem2Outcome> {
    let DesignParams { v, k, lambda } = params;
    let fail = |p| Ok(Problem2Outcome::PremiseFailure(p));
    if a.rows() != v || a.cols() != v {
        return fail(Premise::Order {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_symmetric() {
        return fail(Premise::NotSymmetric);
    }
    if !params.in_range() {
        return fail(Premise::ParameterRange);
    }
    let d = k - lambda;
    if d.sqrt() * d.sqrt() == d {
        return fail(Premise::SquareDifference(d));
    }
    for (row, entries) in a.gram().iter().enumerate() {
        for (col, &found) in entries.iter().enumerate() {
            let expected = if row == col { k } else { lambda };
            if found != expected {
                return fail(Premise::GramEntry {
                    row,
                    col,
                    expected,
                    found,
                });
            }
        }
    }
    let trace = a.trace();
    let row_sums_k = a.row_sums().iter().all(|&s| s == k);
    if trace != k || !row_sums_k {
        return Err(Error::Invariant(format!(
            "premises hold but trace is {trace} (k = {k}), row sums {:?}",
            a.row_sums()
        )));
    }
    Ok(Problem2Outcome::Verified { trace, row_sums_k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_of_ones() {
        let a = ZeroOneMatrix::ones(1, 4);
        assert_eq!(
            problem1_analyze(&a).unwrap(),
            Problem1Outcome::AllOnesRow(0)
        );
    }

    #[test]
    fn forbidden_pattern_itself() {
        let a = ZeroOneMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(
            problem1_analyze(&a).unwrap(),
            Problem1Outcome::ForbiddenSubmatrix {
                rows: [0, 1, 2],
                cols: [0, 1, 2]
            }
        );
    }

    #[test]
    fn shape_from_the_induction() {
        let a = ZeroOneMatrix::from_rows(&[
            vec![0, 1, 1, 1],
            vec![1, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![1, 1, 1, 0],
        ])
        .unwrap();
        assert!(matches!(
            problem1_analyze(&a).unwrap(),
            Problem1Outcome::ForbiddenSubmatrix { .. }
        ));
    }

    #[test]
    fn disjoint_columns() {
        let a = ZeroOneMatrix::identity(2);
        assert_eq!(
            problem1_analyze(&a).unwrap(),
            Problem1Outcome::DisjointColumns { a: 0, b: 1 }
        );
    }

    #[test]
    fn identity_fails_parameter_range() {
        let out =
            problem2_analyze(&ZeroOneMatrix::identity(4), DesignParams::new(4, 1, 1)).unwrap();
        assert_eq!(
            out,
            Problem2Outcome::PremiseFailure(Premise::ParameterRange)
        );
    }

    #[test]
    fn non_symmetric_input() {
        let a = ZeroOneMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let out = problem2_analyze(&a, DesignParams::new(2, 1, 0)).unwrap();
        assert_eq!(out, Problem2Outcome::PremiseFailure(Premise::NotSymmetric));
    }
}
