//! Random squares, isotopies and matrices for sampling-based checks.
//!
//! None of these samplers is uniform. Squares are grown row by row, each
//! row a perfect matching between columns and their missing symbols found
//! after a random relabelling, and then moved by a random isotopy.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::latin::{Isotopy, LatinSquare};
use crate::matching::max_matching;
use crate::matrix::{ExactMatrix, Permutation, Rational, ZeroOneMatrix};
use crate::transversals::{check_parity_conjecture, ParityVerdict};

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_isotopy<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Isotopy {
    Isotopy {
        rows: random_permutation(n, rng),
        cols: random_permutation(n, rng),
        symbols: random_permutation(n, rng),
    }
}

pub fn random_latin_square<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LatinSquare {
    let mut cells = Vec::with_capacity(n * n);
    let mut used = vec![vec![false; n]; n];
    for _ in 0..n {
        let pc = random_permutation(n, rng);
        let ps = random_permutation(n, rng);
        let missing = ZeroOneMatrix::from_fn(n, n, |a, b| !used[pc[a]][ps[b]]);
        let m = max_matching(&missing);
        let mut row = vec![0u8; n];
        for &(a, b) in m.cells() {
            row[pc[a]] = ps[b] as u8;
            used[pc[a]][ps[b]] = true;
        }
        debug_assert_eq!(m.len(), n);
        cells.extend(row);
    }
    let sq = LatinSquare::from_cells(n, cells).expect("rows are perfect matchings");
    random_isotopy(n, rng).apply(&sq)
}

/// A convex combination of `terms` random permutation matrices with random
/// positive integer weights up to `max_weight`, normalized exactly.
pub fn random_doubly_stochastic<R: Rng + ?Sized>(
    n: usize,
    terms: usize,
    max_weight: u32,
    rng: &mut R,
) -> ExactMatrix {
    let weights: Vec<u32> = (0..terms.max(1))
        .map(|_| rng.random_range(1..=max_weight.max(1)))
        .collect();
    let total: u32 = weights.iter().sum();
    let mut m = ExactMatrix::zeros(n, n);
    for w in weights {
        let c = Rational::new(BigInt::from(w), BigInt::from(total));
        for (i, j) in random_permutation(n, rng).into_iter().enumerate() {
            let v = m.get(i, j) + &c;
            m.set(i, j, v);
        }
    }
    m
}

/// Each entry is 1 with probability `p`.
pub fn random_zero_one<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    p: f64,
    rng: &mut R,
) -> ZeroOneMatrix {
    let mut m = ZeroOneMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.random_bool(p) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Random integer matrix with entries in `lo..=hi`.
pub fn random_integer_matrix<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
    rng: &mut R,
) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| {
        Rational::from_integer(BigInt::from(rng.random_range(lo..=hi)))
    })
}

/// Samples random squares of order `n` until one has a transversal count
/// of the wrong parity. Returns it with its verdict and the number of
/// squares tried.
pub fn search_parity_counterexample<R: Rng + ?Sized>(
    n: usize,
    attempts: usize,
    rng: &mut R,
) -> Option<(LatinSquare, ParityVerdict, usize)> {
    (1..=attempts).find_map(|tries| {
        let sq = random_latin_square(n, rng);
        let v = check_parity_conjecture(&sq).ok()?;
        v.is_counterexample().then_some((sq, v, tries))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=9 {
            let sq = random_latin_square(n, &mut rng);
            assert_eq!(sq.order(), n);
            assert!(random_doubly_stochastic(n, 4, 10, &mut rng).is_doubly_stochastic());
        }
        let z = random_zero_one(3, 5, 0.5, &mut rng);
        assert_eq!((z.rows(), z.cols()), (3, 5));
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = random_latin_square(6, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_latin_square(6, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
    }
}
