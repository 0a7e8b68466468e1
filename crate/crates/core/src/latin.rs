//! Latin rectangles and squares, paths, transversals and Latin cubes.
//!
//! Symbols are stored internally as `0..n`. External names live in a
//! [`SymbolTable`](crate::io::SymbolTable) and only matter for parsing and
//! printing.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order representable with byte-sized symbols.
pub const MAX_ORDER: usize = u8::MAX as usize;

/// An `r x s` array over the symbols `0..n` with no repeat in any row or column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    order: usize,
    cells: Vec<u8>,
}

impl LatinRectangle {
    /// Builds a rectangle of the given order from nested rows, validating it.
    pub fn new(order: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let r = rows.len();
        let s = rows.first().map_or(0, Vec::len);
        let mut cells = Vec::with_capacity(r * s);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != s {
                return Err(Error::RaggedRow {
                    line: i + 1,
                    expected: s,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::SymbolOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order,
                    });
                }
                cells.push(v as u8);
            }
        }
        Self::from_cells(r, s, order, cells)
    }

    /// Builds a rectangle from row-major cells, validating it.
    pub fn from_cells(rows: usize, cols: usize, order: usize, cells: Vec<u8>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        if rows > order || cols > order {
            return Err(Error::RectangleTooLarge { rows, cols, order });
        }
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {rows}x{cols} rectangle",
                cells.len()
            )));
        }
        check_latin(rows, cols, order, &cells)?;
        Ok(Self {
            rows,
            cols,
            order,
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.cols + col] as usize
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// `N(i)`: how many times each symbol occurs in the rectangle.
    pub fn symbol_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.order];
        for &v in &self.cells {
            counts[v as usize] += 1;
        }
        counts
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.order && self.cols == self.order
    }

    /// Reinterprets the rectangle as a square when `r = s = n`.
    pub fn into_square(self) -> Result<LatinSquare> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(LatinSquare {
            n: self.order,
            cells: self.cells,
        })
    }
}

fn check_latin(rows: usize, cols: usize, order: usize, cells: &[u8]) -> Result<()> {
    if let Some(pos) = cells.iter().position(|&v| v as usize >= order) {
        return Err(Error::SymbolOutOfRange {
            row: pos / cols,
            col: pos % cols,
            value: cells[pos] as usize,
            order,
        });
    }
    let mut seen = vec![false; order];
    for j in 0..cols {
        seen.fill(false);
        for i in 0..rows {
            let v = cells[i * cols + j] as usize;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::ColumnRepeat {
                    col: j,
                    symbol: v.to_string(),
                });
            }
        }
    }
    for i in 0..rows {
        seen.fill(false);
        for &v in &cells[i * cols..(i + 1) * cols] {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::RowRepeat {
                    row: i,
                    symbol: v.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// A Latin square of order `n` over the symbols `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| self.row(i)))
            .finish()
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl LatinSquare {
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        LatinRectangle::new(n, rows)?.into_square()
    }

    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        LatinRectangle::from_cells(n, n, n, cells)?.into_square()
    }

    /// The addition table of `Z_n`: entry `(i, j)` is `(i + j) mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "order out of range");
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u8))
            .collect();
        Self { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col] as usize
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.cells[i * self.n + col]).collect()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn as_rectangle(&self) -> LatinRectangle {
        LatinRectangle {
            rows: self.n,
            cols: self.n,
            order: self.n,
            cells: self.cells.clone(),
        }
    }

    pub fn symbol_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for &v in &self.cells {
            counts[v as usize] += 1;
        }
        counts
    }

    /// First row and first column both read `0, 1, ..., n-1`.
    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|k| self.get(0, k) == k && self.get(k, 0) == k)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.cells[j * n + i])
            .collect();
        Self { n, cells }
    }

    /// Reduces the square: columns are permuted so row 0 reads `0..n`, then
    /// rows are permuted so column 0 reads `0..n`. Symbols are untouched.
    pub fn normalize(&self) -> Self {
        self.normalize_with_witness().0
    }

    /// Like [`normalize`](Self::normalize), also returning the isotopy that
    /// maps `self` onto the reduced square.
    pub fn normalize_with_witness(&self) -> (Self, Isotopy) {
        let n = self.n;
        // Old column c moves to position row0[c].
        let cols: Vec<usize> = self.row(0).iter().map(|&v| v as usize).collect();
        // After the column move, column 0 holds the old column c0 with row0[c0] = 0.
        let c0 = cols.iter().position(|&c| c == 0).unwrap_or(0);
        let rows: Vec<usize> = (0..n).map(|i| self.get(i, c0)).collect();
        let witness = Isotopy {
            rows,
            cols,
            symbols: (0..n).collect(),
        };
        let reduced = witness.apply(self);
        (reduced, witness)
    }

    pub fn to_cube(&self) -> LatinCube {
        let n = self.n;
        let mut bits = vec![false; n * n * n];
        for i in 0..n {
            for j in 0..n {
                bits[(i * n + j) * n + self.get(i, j)] = true;
            }
        }
        LatinCube { n, bits }
    }

    pub fn from_cube(cube: &LatinCube) -> Self {
        let n = cube.n;
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                let k = (0..n)
                    .find(|&k| cube.get(i, j, k))
                    .expect("validated cube has one 1 per line");
                cells[i * n + j] = k as u8;
            }
        }
        Self { n, cells }
    }
}

/// Row, column and symbol permutations. Applying it sends entry `v` at
/// `(i, j)` to entry `symbols[v]` at `(rows[i], cols[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotopy {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub symbols: Vec<usize>,
}

impl Isotopy {
    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).collect(),
            cols: (0..n).collect(),
            symbols: (0..n).collect(),
        }
    }

    pub fn apply(&self, sq: &LatinSquare) -> LatinSquare {
        let n = sq.order();
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[self.rows[i] * n + self.cols[j]] = self.symbols[sq.get(i, j)] as u8;
            }
        }
        LatinSquare { n, cells }
    }

    pub fn inverse(&self) -> Self {
        Self {
            rows: invert(&self.rows),
            cols: invert(&self.cols),
            symbols: invert(&self.symbols),
        }
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

/// `n` cells of an `n x n` array, one in each row and each column.
///
/// Stored as the column chosen in each row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    cols: Vec<usize>,
}

impl Path {
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        if !is_permutation(&cols) {
            return Err(Error::InvalidTransversal(format!(
                "{cols:?} is not a permutation"
            )));
        }
        Ok(Self { cols })
    }

    pub fn diagonal(n: usize) -> Self {
        Self {
            cols: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column_of(&self, row: usize) -> usize {
        self.cols[row]
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().copied().enumerate()
    }
}

/// A path whose cells carry every symbol of the host square exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transversal {
    path: Path,
    symbols: Vec<u8>,
}

impl Transversal {
    /// Checks that `path` is a transversal of `sq`.
    pub fn of(sq: &LatinSquare, path: Path) -> Result<Self> {
        let n = sq.order();
        if path.len() != n {
            return Err(Error::InvalidTransversal(format!(
                "path of length {} in a square of order {n}",
                path.len()
            )));
        }
        let symbols: Vec<u8> = path.cells().map(|(i, j)| sq.get(i, j) as u8).collect();
        let mut seen = vec![false; n];
        for &s in &symbols {
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::InvalidTransversal(format!(
                    "symbol {s} repeats along the path"
                )));
            }
        }
        Ok(Self { path, symbols })
    }

    pub(crate) fn from_parts_unchecked(path: Path, symbols: Vec<u8>) -> Self {
        Self { path, symbols }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Symbols along the path, listed by row.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.path.cells()
    }
}

/// An `n x n x n` zero-one array with exactly one 1 on every axis-parallel line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinCube {
    n: usize,
    bits: Vec<bool>,
}

impl LatinCube {
    /// Validates the one-1-per-line property along all three axes.
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != n * n * n {
            return Err(Error::InvalidCube(format!(
                "{} bits for order {n}",
                bits.len()
            )));
        }
        let at = |i: usize, j: usize, k: usize| bits[(i * n + j) * n + k];
        for a in 0..n {
            for b in 0..n {
                let lines = [
                    (0..n).filter(|&x| at(x, a, b)).count(),
                    (0..n).filter(|&x| at(a, x, b)).count(),
                    (0..n).filter(|&x| at(a, b, x)).count(),
                ];
                if let Some(axis) = lines.iter().position(|&c| c != 1) {
                    return Err(Error::InvalidCube(format!(
                        "line along axis {axis} through ({a}, {b}) holds {} ones",
                        lines[axis]
                    )));
                }
            }
        }
        Ok(Self { n, bits })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits[(i * self.n + j) * self.n + k]
    }

    /// Coordinates of all set bits in lexicographic order.
    pub fn ones(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        (0..n * n * n)
            .filter(|&x| self.bits[x])
            .map(|x| (x / (n * n), (x / n) % n, x % n))
            .collect()
    }
}
