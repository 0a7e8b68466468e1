//! The `n² x (t + 2)` array form of an orthogonal system.

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, MAX_ORDER};

use super::OrthogonalSystem;

/// An `n² x w` array over `0..n` in which every pair of columns, read row by
/// row, contains each ordered pair of symbols exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    order: usize,
    width: usize,
    data: Vec<u8>,
}

impl Schema {
    /// Validates the all-pairs property on every column pair.
    pub fn new(order: usize, width: usize, data: Vec<u8>) -> Result<Self> {
        let n = order;
        if data.len() != n * n * width {
            return Err(Error::InvalidSchema(format!(
                "{} entries for {} rows of width {width}",
                data.len(),
                n * n
            )));
        }
        if let Some(v) = data.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidSchema(format!("symbol {v} outside 0..{n}")));
        }
        let sch = Self { order, width, data };
        let mut seen = vec![false; n * n];
        for c in 0..width {
            for d in c + 1..width {
                seen.fill(false);
                for k in 0..n * n {
                    let pair = sch.get(k, c) * n + sch.get(k, d);
                    if std::mem::replace(&mut seen[pair], true) {
                        return Err(Error::InvalidSchema(format!(
                            "columns {c} and {d} repeat the pair ({}, {}) at row {k}",
                            sch.get(k, c),
                            sch.get(k, d)
                        )));
                    }
                }
            }
        }
        Ok(sch)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of columns, `t + 2`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.order * self.order
    }

    pub fn row(&self, k: usize) -> &[u8] {
        &self.data[k * self.width..(k + 1) * self.width]
    }

    pub fn get(&self, k: usize, c: usize) -> usize {
        self.data[k * self.width + c] as usize
    }
}

/// Rows `(i, j, A_1[i][j], ..., A_t[i][j])` in row-major cell order.
pub fn system_to_schema(sys: &OrthogonalSystem) -> Result<Schema> {
    let n = sys.order();
    let width = sys.len() + 2;
    let mut data = Vec::with_capacity(n * n * width);
    for i in 0..n {
        for j in 0..n {
            data.push(i as u8);
            data.push(j as u8);
            data.extend(sys.squares().iter().map(|s| s.get(i, j) as u8));
        }
    }
    Schema::new(n, width, data)
}

/// Reads columns 0 and 1 as cell coordinates and each further column as a square.
pub fn schema_to_system(sch: &Schema) -> Result<OrthogonalSystem> {
    let n = sch.order();
    if sch.width() < 2 {
        return Err(Error::InvalidSchema(format!(
            "width {} leaves no coordinate columns",
            sch.width()
        )));
    }
    let t = sch.width() - 2;
    let mut cells = vec![vec![0u8; n * n]; t];
    for k in 0..sch.rows() {
        let (i, j) = (sch.get(k, 0), sch.get(k, 1));
        for (tau, square) in cells.iter_mut().enumerate() {
            square[i * n + j] = sch.get(k, tau + 2) as u8;
        }
    }
    let squares = cells
        .into_iter()
        .map(|c| LatinSquare::from_cells(n, c))
        .collect::<Result<Vec<_>>>()?;
    OrthogonalSystem::new(n, squares)
}

/// Product schema of order `n·n'`: row `(k, k')` holds the pairs
/// `(b[k][c], b'[k'][c])`, each encoded as `x·n' + x'`.
pub fn macneish_product(b: &Schema, b2: &Schema) -> Result<Schema> {
    if b.width() != b2.width() {
        return Err(Error::DimensionMismatch(format!(
            "schema widths {} and {}",
            b.width(),
            b2.width()
        )));
    }
    let (n, n2, w) = (b.order(), b2.order(), b.width());
    if n * n2 > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n * n2,
            max: MAX_ORDER,
        });
    }
    let mut data = Vec::with_capacity(b.rows() * b2.rows() * w);
    for k in 0..b.rows() {
        for k2 in 0..b2.rows() {
            data.extend((0..w).map(|c| (b.get(k, c) * n2 + b2.get(k2, c)) as u8));
        }
    }
    Schema::new(n * n2, w, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mols::{are_orthogonal, complete_system, FiniteField};

    fn gf(p: u64, a: u32) -> OrthogonalSystem {
        complete_system(&FiniteField::new(p, a).unwrap()).unwrap()
    }

    #[test]
    fn round_trip() {
        let sys = gf(3, 1);
        let sch = system_to_schema(&sys).unwrap();
        assert_eq!((sch.rows(), sch.width()), (9, 4));
        assert_eq!(schema_to_system(&sch).unwrap(), sys);
        let single = sys.clone().truncate(1);
        let sch1 = system_to_schema(&single).unwrap();
        assert_eq!(sch1.width(), 3);
        assert_eq!(schema_to_system(&sch1).unwrap(), single);
    }

    #[test]
    fn rejects_repeated_pairs() {
        let bad = vec![0, 0, 0, 1, 1, 0, 1, 0];
        assert!(matches!(
            Schema::new(2, 2, bad),
            Err(Error::InvalidSchema(_))
        ));
        assert!(Schema::new(2, 2, vec![0, 0, 0, 1, 1, 0, 1, 2]).is_err());
        assert!(Schema::new(2, 2, vec![0, 0]).is_err());
    }

    #[test]
    fn products() {
        let s3 = system_to_schema(&gf(3, 1)).unwrap();
        let s9 = macneish_product(&s3, &s3).unwrap();
        let sys9 = schema_to_system(&s9).unwrap();
        assert_eq!((sys9.order(), sys9.len()), (9, 2));
        let s4 = system_to_schema(&gf(2, 2).truncate(2)).unwrap();
        let sys12 = schema_to_system(&macneish_product(&s3, &s4).unwrap()).unwrap();
        assert_eq!((sys12.order(), sys12.len()), (12, 2));
        assert!(are_orthogonal(&sys12.squares()[0], &sys12.squares()[1]).unwrap());
        assert!(macneish_product(&s3, &system_to_schema(&gf(2, 2)).unwrap()).is_err());
    }

    #[test]
    fn product_with_trivial_schema() {
        let s3 = system_to_schema(&gf(3, 1)).unwrap();
        let one = Schema::new(1, 4, vec![0; 4]).unwrap();
        assert_eq!(macneish_product(&s3, &one).unwrap(), s3);
        assert_eq!(macneish_product(&one, &s3).unwrap(), s3);
    }
}
