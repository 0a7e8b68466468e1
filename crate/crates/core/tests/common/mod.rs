//! Brute-force oracles shared by the integration tests. Everything here is
//! written independently of the library's algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ryserlab::latin::LatinSquare;
use ryserlab::matrix::{ExactMatrix, Rational, ZeroOneMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All injective maps `0..m -> 0..n`, as image lists, in lexicographic order.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(
        m: usize,
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(m, n, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    injections(n, n)
}

/// Sum over injective maps of products of the selected entries.
pub fn brute_permanent(a: &ExactMatrix) -> Rational {
    injections(a.rows(), a.cols())
        .iter()
        .map(|f| {
            f.iter()
                .enumerate()
                .fold(Rational::one(), |acc, (i, &j)| acc * a.get(i, j))
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

pub fn brute_permanent_01(a: &ZeroOneMatrix) -> BigInt {
    let count = injections(a.rows(), a.cols())
        .iter()
        .filter(|f| f.iter().enumerate().all(|(i, &j)| a.get(i, j)))
        .count();
    BigInt::from(count)
}

/// Column lists of all transversals, lexicographically ordered.
pub fn brute_transversals(sq: &LatinSquare) -> Vec<Vec<usize>> {
    let n = sq.order();
    permutations(n)
        .into_iter()
        .filter(|p| {
            let mut seen = vec![false; n];
            p.iter()
                .enumerate()
                .all(|(i, &j)| !std::mem::replace(&mut seen[sq.get(i, j)], true))
        })
        .collect()
}

/// Every zero-one matrix of the given shape, in binary counting order.
pub fn all_zero_one(rows: usize, cols: usize) -> impl Iterator<Item = ZeroOneMatrix> {
    let cells = rows * cols;
    (0u64..1 << cells)
        .map(move |bits| ZeroOneMatrix::from_fn(rows, cols, |i, j| bits >> (i * cols + j) & 1 == 1))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `D_n` from the recurrence `D_n = (n-1)(D_{n-1} + D_{n-2})`.
pub fn derangements_by_recurrence(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    if n == 0 {
        return a;
    }
    for k in 2..=n {
        let next = (k - 1) * (&a + &b);
        a = b;
        b = next;
    }
    b
}

/// Is the square completable from `rows`? Cell-by-cell search.
pub fn brute_completion_exists(n: usize, rows: &[Vec<Option<usize>>]) -> bool {
    let mut grid: Vec<Vec<Option<usize>>> = rows.to_vec();
    fn fill(n: usize, grid: &mut Vec<Vec<Option<usize>>>, k: usize) -> bool {
        if k == n * n {
            return true;
        }
        let (i, j) = (k / n, k % n);
        if grid[i][j].is_some() {
            return fill(n, grid, k + 1);
        }
        for v in 0..n {
            let clash = (0..n).any(|x| grid[i][x] == Some(v) || grid[x][j] == Some(v));
            if !clash {
                grid[i][j] = Some(v);
                if fill(n, grid, k + 1) {
                    return true;
                }
                grid[i][j] = None;
            }
        }
        false
    }
    grid.resize(n, vec![None; n]);
    for row in grid.iter_mut() {
        row.resize(n, None);
    }
    fill(n, &mut grid, 0)
}
