//! Zero-one matrices with packed rows and dense matrices of exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A permutation of `0..n`, stored as the image of each index.
pub type Permutation = Vec<usize>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// An `m x n` matrix of zeros and ones, each row packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl fmt::Debug for ZeroOneMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZeroOneMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

impl ZeroOneMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix with a 1 at `(i, perm[i])` for every row `i`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zeros(perm.len(), perm.len());
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    line: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::Malformed(format!(
                            "entry {v} at ({i}, {j}) is not 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from a predicate on coordinates.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        let w = &mut self.words[row * self.stride + col / 64];
        if value {
            *w |= 1 << (col % 64);
        } else {
            *w &= !(1 << (col % 64));
        }
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        let v = self.get(row, col);
        self.set(row, col, !v);
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        &self.words[row * self.stride..(row + 1) * self.stride]
    }

    /// Column indices holding a 1 in `row`, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(row)
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| BitIter(bits).map(move |b| w * 64 + b))
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.row_words(row)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_sum(i)).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                sums[j] += 1;
            }
        }
        sums
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The common line sum when every row and column sums to the same `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let rows = self.row_sums();
        let d = rows.first().copied().unwrap_or(0);
        (rows.iter().all(|&r| r == d) && self.col_sums().iter().all(|&c| c == d)).then_some(d)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Number of columns where rows `a` and `b` both hold a 1.
    pub fn row_inner(&self, a: usize, b: usize) -> usize {
        self.row_words(a)
            .iter()
            .zip(self.row_words(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    /// `A A^T` as an integer matrix.
    pub fn gram(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|a| (0..self.rows).map(|b| self.row_inner(a, b)).collect())
            .collect()
    }

    pub fn trace(&self) -> usize {
        (0..self.rows.min(self.cols))
            .filter(|&i| self.get(i, i))
            .count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// Keeps only the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            if self.get(i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// A dense `m x n` matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    line: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| integer(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| {
            if perm[i] == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(rows[i], cols[j])`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!((rows.len(), cols.len()), (self.rows, self.cols));
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, c, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    /// Square, nonnegative, all line sums exactly 1.
    pub fn check_doubly_stochastic(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some(pos) = self.data.iter().position(|v| v.is_negative()) {
            return Err(Error::NotDoublyStochastic(format!(
                "negative entry at ({}, {})",
                pos / self.cols,
                pos % self.cols
            )));
        }
        let one = Rational::one();
        if let Some(i) = self.row_sums().iter().position(|s| *s != one) {
            return Err(Error::NotDoublyStochastic(format!(
                "row {i} does not sum to 1"
            )));
        }
        if let Some(j) = self.col_sums().iter().position(|s| *s != one) {
            return Err(Error::NotDoublyStochastic(format!(
                "column {j} does not sum to 1"
            )));
        }
        Ok(())
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.check_doubly_stochastic().is_ok()
    }

    /// Converts to a zero-one matrix if every entry is 0 or 1.
    pub fn to_zero_one(&self) -> Option<ZeroOneMatrix> {
        let one = Rational::one();
        if !self.data.iter().all(|v| v.is_zero() || *v == one) {
            return None;
        }
        Some(ZeroOneMatrix::from_fn(self.rows, self.cols, |i, j| {
            !self.get(i, j).is_zero()
        }))
    }

    /// Zero-one pattern of the positive entries.
    pub fn support(&self) -> ZeroOneMatrix {
        ZeroOneMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_rows_cross_word_boundary() {
        let mut m = ZeroOneMatrix::zeros(2, 130);
        m.set(0, 0, true);
        m.set(0, 64, true);
        m.set(1, 129, true);
        assert_eq!(m.row_ones(0).collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(m.row_sums(), vec![2, 1]);
        assert_eq!(m.col_sums()[129], 1);
        assert_eq!(m.row_inner(0, 1), 0);
        m.flip(1, 129);
        assert_eq!(m.count_ones(), 2);
    }

    #[test]
    fn rejects_non_binary_entries() {
        assert!(ZeroOneMatrix::from_rows(&[vec![0, 2]]).is_err());
        assert!(ZeroOneMatrix::from_rows(&[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rational(2, 4), rational(-1, -2));
        assert_eq!(rational(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn doubly_stochastic_check() {
        let half = rational(1, 2);
        let m = ExactMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half],
        ])
        .unwrap();
        assert!(m.is_doubly_stochastic());
        let bad = ExactMatrix::from_integers(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(
            bad.check_doubly_stochastic(),
            Err(Error::NotDoublyStochastic(_))
        ));
    }

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_integers(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = a.mul(&a.transpose()).unwrap();
        assert_eq!(
            b,
            ExactMatrix::from_integers(&[vec![5, 11], vec![11, 25]]).unwrap()
        );
        assert!(a.mul(&ExactMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn gram_of_identity() {
        let g = ZeroOneMatrix::identity(3).gram();
        assert_eq!(g, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
