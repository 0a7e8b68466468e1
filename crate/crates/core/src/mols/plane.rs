//! Projective planes as zero-one incidence matrices with `AA^T = nI + J`.
//!
//! Rows are points and columns are lines.

use crate::error::{Error, Result};
use crate::matrix::ZeroOneMatrix;

use super::{schema_to_system, system_to_schema, OrthogonalSystem, Schema};

/// A verified incidence matrix of a projective plane of order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneIncidence {
    order: usize,
    matrix: ZeroOneMatrix,
}

impl PlaneIncidence {
    pub fn new(matrix: ZeroOneMatrix, order: usize) -> Result<Self> {
        if !verify_plane(&matrix, order)? {
            return Err(Error::NotAPlane(order));
        }
        Ok(Self { order, matrix })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrix(&self) -> &ZeroOneMatrix {
        &self.matrix
    }

    /// `n² + n + 1`.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

fn plane_size(n: usize) -> usize {
    n * n + n + 1
}

/// Exact check of `AA^T = nI + J` and of all line sums being `n + 1`.
pub fn verify_plane(a: &ZeroOneMatrix, n: usize) -> Result<bool> {
    let m = plane_size(n);
    if a.rows() != m || a.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "order {n} needs a {m}x{m} matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let sums_ok = a
        .row_sums()
        .iter()
        .chain(&a.col_sums())
        .all(|&s| s == n + 1);
    let gram_ok = a.gram().iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &v)| v == if i == j { n + 1 } else { 1 })
    });
    Ok(sums_ok && gram_ok)
}

/// Points are the `n²` schema rows followed by one ideal point per schema
/// column (`n² + j`). Line `j·n + i` holds the rows with `i` in column `j`
/// together with ideal point `j`; line `n² + n` is the ideal line.
pub fn plane_from_system(sys: &OrthogonalSystem) -> Result<PlaneIncidence> {
    let n = sys.order();
    if n < 2 || !sys.is_complete() {
        return Err(Error::InvalidSystem(format!(
            "{} squares of order {n} do not form a complete system",
            sys.len()
        )));
    }
    let sch = system_to_schema(sys)?;
    let m = plane_size(n);
    let mut a = ZeroOneMatrix::zeros(m, m);
    for k in 0..n * n {
        for j in 0..=n {
            a.set(k, j * n + sch.get(k, j), true);
        }
    }
    for j in 0..=n {
        for i in 0..n {
            a.set(n * n + j, j * n + i, true);
        }
        a.set(n * n + j, n * n + n, true);
    }
    PlaneIncidence::new(a, n)
}

/// Recovers a complete system from a plane.
///
/// Line 0 plays the distinguished line. Its points `P_j` (ascending) index
/// the schema columns and the remaining points `Q_q` (ascending) the schema
/// rows. The other lines through each `P_j` are numbered `0..n` in
/// ascending order, and entry `(q, j)` is the number of the line joining
/// `Q_q` and `P_j`.
pub fn system_from_plane(plane: &PlaneIncidence) -> Result<OrthogonalSystem> {
    let (n, a) = (plane.order, &plane.matrix);
    let m = plane.size();
    let (p, q): (Vec<usize>, Vec<usize>) = (0..m).partition(|&x| a.get(x, 0));
    let mut label = vec![usize::MAX; m];
    for &pj in &p {
        for (number, line) in a.row_ones(pj).filter(|&l| l != 0).enumerate() {
            label[line] = number;
        }
    }
    let mut data = Vec::with_capacity(n * n * (n + 1));
    for &qq in &q {
        for &pj in &p {
            let line = (0..m)
                .find(|&l| a.get(qq, l) && a.get(pj, l))
                .ok_or(Error::NotAPlane(n))?;
            data.push(label[line] as u8);
        }
    }
    schema_to_system(&Schema::new(n, n + 1, data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::LatinSquare;
    use crate::mols::{complete_system, FiniteField};

    fn fano_system() -> OrthogonalSystem {
        OrthogonalSystem::new(2, vec![LatinSquare::cyclic(2)]).unwrap()
    }

    #[test]
    fn fano() {
        let plane = plane_from_system(&fano_system()).unwrap();
        assert_eq!(plane.size(), 7);
        let back = system_from_plane(&plane).unwrap();
        assert!(back.is_complete());
        assert_eq!(back.order(), 2);
    }

    #[test]
    fn perturbations_fail() {
        let plane = plane_from_system(&fano_system()).unwrap();
        let mut flipped = plane.matrix().clone();
        flipped.flip(3, 4);
        assert!(!verify_plane(&flipped, 2).unwrap());
        assert!(!verify_plane(&ZeroOneMatrix::ones(7, 7), 2).unwrap());
        assert!(verify_plane(&ZeroOneMatrix::ones(6, 6), 2).is_err());
        assert!(matches!(
            PlaneIncidence::new(flipped, 2),
            Err(Error::NotAPlane(2))
        ));
    }

    #[test]
    fn order_three_round_trip() {
        let sys = complete_system(&FiniteField::new(3, 1).unwrap()).unwrap();
        let plane = plane_from_system(&sys).unwrap();
        assert_eq!(plane.size(), 13);
        assert!(plane.matrix().row_sums().iter().all(|&s| s == 4));
        let back = system_from_plane(&plane).unwrap();
        assert_eq!(back.len(), 2);
        let again = plane_from_system(&back).unwrap();
        assert!(verify_plane(again.matrix(), 3).unwrap());
    }

    #[test]
    fn incomplete_system_rejected() {
        let sys = complete_system(&FiniteField::new(2, 2).unwrap())
            .unwrap()
            .truncate(2);
        assert!(matches!(
            plane_from_system(&sys),
            Err(Error::InvalidSystem(_))
        ));
    }
}
