//! Concrete squares and matrices used as reference data.

use crate::latin::LatinSquare;
use crate::matrix::{rational, ExactMatrix, Rational};

/// Parker's order-10 square (symbol `k` is digit `k`).
pub const PARKER_ROWS: [[u8; 10]; 10] = [
    [5, 1, 7, 3, 4, 0, 6, 2, 8, 9],
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 0],
    [7, 3, 4, 5, 6, 2, 8, 9, 0, 1],
    [3, 4, 5, 6, 7, 8, 9, 0, 1, 2],
    [4, 5, 6, 7, 8, 9, 0, 1, 2, 3],
    [0, 6, 2, 8, 9, 5, 1, 7, 3, 4],
    [6, 7, 8, 9, 0, 1, 2, 3, 4, 5],
    [2, 8, 9, 0, 1, 7, 3, 4, 5, 6],
    [8, 9, 0, 1, 2, 3, 4, 5, 6, 7],
    [9, 0, 1, 2, 3, 4, 5, 6, 7, 8],
];

/// The highlighted cells of Parker's square.
pub const PARKER_BOXED: [(usize, usize); 12] = [
    (0, 0),
    (0, 2),
    (0, 5),
    (0, 7),
    (2, 0),
    (2, 5),
    (5, 0),
    (5, 2),
    (5, 5),
    (5, 7),
    (7, 0),
    (7, 5),
];

pub fn parker_square() -> LatinSquare {
    LatinSquare::from_cells(10, PARKER_ROWS.concat()).expect("Parker's square is Latin")
}

/// Parker's square with 0 and 5, and 2 and 7, exchanged on the highlighted
/// cells. The result is the cyclic square of order 10.
pub fn parker_swapped() -> LatinSquare {
    let mut cells = PARKER_ROWS;
    for &(i, j) in &PARKER_BOXED {
        cells[i][j] = match cells[i][j] {
            0 => 5,
            5 => 0,
            2 => 7,
            7 => 2,
            v => v,
        };
    }
    LatinSquare::from_cells(10, cells.concat()).expect("swapped square is Latin")
}

/// The order-3 square listed among the small reduced squares, in 0-based symbols.
pub fn circulant3() -> LatinSquare {
    LatinSquare::cyclic(3)
}

/// An orthogonal mate of [`circulant3`].
pub fn circulant3_mate() -> LatinSquare {
    LatinSquare::new(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).expect("Latin")
}

fn scaled(rows: &[[i64; 3]], den: i64) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| rational(v, den)).collect())
            .collect(),
    )
    .expect("rectangular")
}

/// Jurkat's doubly stochastic `A = (1/24) [[11,5,8],[13,11,0],[0,8,16]]`.
pub fn jurkat_a() -> ExactMatrix {
    scaled(&[[11, 5, 8], [13, 11, 0], [0, 8, 16]], 24)
}

/// Jurkat's `B = (1/2) [[1,1,0],[1,1,0],[0,0,2]]`.
pub fn jurkat_b() -> ExactMatrix {
    scaled(&[[1, 1, 0], [1, 1, 0], [0, 0, 2]], 2)
}

/// Newman's `A = (1/2)(I + P)` with `P` the cyclic shift of order 4.
pub fn newman_a() -> ExactMatrix {
    let half = rational(1, 2);
    ExactMatrix::from_fn(4, 4, |i, j| {
        if j == i || j == (i + 1) % 4 {
            half.clone()
        } else {
            Rational::from_integer(0.into())
        }
    })
}

/// The 0-1 matrix of the König–Egerváry worked example.
pub fn konig_example() -> crate::matrix::ZeroOneMatrix {
    crate::matrix::ZeroOneMatrix::from_rows(&[
        vec![1, 0, 1, 1],
        vec![0, 1, 0, 0],
        vec![1, 0, 0, 0],
        vec![1, 0, 0, 0],
    ])
    .expect("binary")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapped_variant_is_cyclic() {
        assert_eq!(parker_swapped(), LatinSquare::cyclic(10));
        let parker = parker_square();
        let changed: Vec<(usize, usize)> = (0..10)
            .flat_map(|i| (0..10).map(move |j| (i, j)))
            .filter(|&(i, j)| parker.get(i, j) != parker_swapped().get(i, j))
            .collect();
        assert_eq!(changed, PARKER_BOXED.to_vec());
    }

    #[test]
    fn counterexample_matrices_are_doubly_stochastic() {
        assert!(jurkat_a().is_doubly_stochastic());
        assert!(jurkat_b().is_doubly_stochastic());
        assert!(newman_a().is_doubly_stochastic());
    }
}
