//! Exact permanents, the identities and bounds around them, and counts of
//! Latin squares and rectangles.
//!
//! Square matrices go through the inclusion-exclusion formula
//! `per(A) = Σ_S (-1)^(n-|S|) Π_i Σ_{j∈S} a_ij` over column subsets `S`,
//! visited in Gray-code order so each step updates the row sums by one
//! column. Each row is first scaled to integers by the lcm of its
//! denominators; the sum runs in `i128` with overflow checks and restarts in
//! big integers if any step overflows. An `m x n` matrix with `m < n` uses
//! the definition: a sum over injective maps from rows to columns.

mod bounds;
mod counting;

pub use bounds::{
    bound_report, compare_with_power_product, rectangle_sandwich_check, BoundEntry, BoundReport,
    Comparison, PowerFactor, SandwichReport, Verdict, BREGMAN, HALL, JURKAT, MINC, MINC_SECOND,
    VAN_DER_WAERDEN,
};
pub use counting::{
    count_rectangles, count_reduced_rectangles, count_reduced_rectangles_parallel,
    count_reduced_squares, count_reduced_squares_parallel, for_each_reduced_square,
    reduced_squares,
};

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Permutation, Rational, ZeroOneMatrix};

/// Largest order accepted by the inclusion-exclusion evaluation.
pub const MAX_RYSER_ORDER: usize = 30;

/// Largest number of columns accepted by the definitional sum.
pub const MAX_NAIVE_COLS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ryser,
    Naive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermanentResult {
    pub value: Rational,
    pub method: Method,
    /// Subsets visited (inclusion-exclusion) or injective maps (definition).
    pub terms: u128,
}

/// Row scaling to integers: returns the integer rows and the product of
/// the scale factors.
fn integer_rows(a: &ExactMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..a.rows())
        .map(|i| {
            let d = a
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let row = a
                .row(i)
                .iter()
                .map(|v| v.numer() * (&d / v.denom()))
                .collect();
            scale *= d;
            row
        })
        .collect();
    (rows, scale)
}

fn ryser_i128(rows: &[Vec<i128>]) -> Option<i128> {
    let n = rows.len();
    let mut sums = vec![0i128; n];
    let mut total = 0i128;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        let added = gray & (1 << j) != 0;
        for (s, row) in sums.iter_mut().zip(rows) {
            *s = if added {
                s.checked_add(row[j])?
            } else {
                s.checked_sub(row[j])?
            };
        }
        let mut prod = 1i128;
        for &s in &sums {
            prod = prod.checked_mul(s)?;
            if prod == 0 {
                break;
            }
        }
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total = total.checked_add(prod)?;
        } else {
            total = total.checked_sub(prod)?;
        }
    }
    Some(total)
}

fn ryser_big(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        let added = gray & (1 << j) != 0;
        for (s, row) in sums.iter_mut().zip(rows) {
            if added {
                *s += &row[j];
            } else {
                *s -= &row[j];
            }
        }
        if sums.iter().any(Zero::is_zero) {
            continue;
        }
        let prod: BigInt = sums.iter().product();
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// Permanent of integer rows by inclusion-exclusion.
fn ryser_integer(rows: &[Vec<BigInt>]) -> BigInt {
    if rows.is_empty() {
        return BigInt::one();
    }
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    small
        .and_then(|s| ryser_i128(&s))
        .map_or_else(|| ryser_big(rows), BigInt::from)
}

fn check_square_order(a: &ExactMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() > MAX_RYSER_ORDER {
        return Err(Error::OrderTooLarge {
            order: a.rows(),
            max: MAX_RYSER_ORDER,
        });
    }
    Ok(())
}

/// Inclusion-exclusion evaluation of a square matrix.
pub fn permanent_ryser(a: &ExactMatrix) -> Result<PermanentResult> {
    check_square_order(a)?;
    let (rows, scale) = integer_rows(a);
    Ok(PermanentResult {
        value: Rational::new(ryser_integer(&rows), scale),
        method: Method::Ryser,
        terms: 1u128 << a.rows(),
    })
}

fn falling_factorial(n: usize, m: usize) -> u128 {
    (0..m).map(|k| (n - k) as u128).product()
}

fn naive_sum(a: &ExactMatrix, row: usize, used: u32, prefix: &Rational, total: &mut Rational) {
    if row == a.rows() {
        *total += prefix;
        return;
    }
    for j in 0..a.cols() {
        if used & (1 << j) != 0 || a.get(row, j).is_zero() {
            continue;
        }
        naive_sum(
            a,
            row + 1,
            used | (1 << j),
            &(prefix * a.get(row, j)),
            total,
        );
    }
}

/// The definition: a sum over injective maps from rows to columns.
pub fn permanent_naive(a: &ExactMatrix) -> Result<PermanentResult> {
    let (m, n) = (a.rows(), a.cols());
    if m > n {
        return Err(Error::DimensionMismatch(format!(
            "a {m}x{n} matrix has more rows than columns"
        )));
    }
    if n > MAX_NAIVE_COLS {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_NAIVE_COLS,
        });
    }
    let mut total = Rational::zero();
    naive_sum(a, 0, 0, &Rational::one(), &mut total);
    Ok(PermanentResult {
        value: total,
        method: Method::Naive,
        terms: falling_factorial(n, m),
    })
}

/// Square matrices by inclusion-exclusion (re-checked against the
/// definition when `n ≤ 7`), `m < n` by the definition.
pub fn permanent(a: &ExactMatrix) -> Result<PermanentResult> {
    if a.rows() < a.cols() {
        return permanent_naive(a);
    }
    let fast = permanent_ryser(a)?;
    if a.rows() <= 7 && permanent_naive(a)?.value != fast.value {
        return Err(Error::Invariant(
            "inclusion-exclusion and definition disagree".into(),
        ));
    }
    Ok(fast)
}

/// Permanent of a zero-one matrix with `m ≤ n`, as an integer.
pub fn permanent_zero_one(a: &ZeroOneMatrix) -> Result<BigInt> {
    if a.rows() == a.cols() {
        if a.rows() > MAX_RYSER_ORDER {
            return Err(Error::OrderTooLarge {
                order: a.rows(),
                max: MAX_RYSER_ORDER,
            });
        }
        let rows: Vec<Vec<BigInt>> = a
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        return Ok(ryser_integer(&rows));
    }
    let v = permanent_naive(&a.to_exact())?.value;
    Ok(v.to_integer())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `D_n = Σ_k (-1)^k n!/k!`, the number of fixed-point-free permutations.
pub fn derangement(n: usize) -> BigInt {
    let mut total = BigInt::zero();
    let mut term = BigInt::from(factorial(n));
    for k in 0..=n {
        if k > 0 {
            term /= k;
        }
        if k % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

fn pow_usize(base: usize, exp: usize) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

/// `Σ_{r<n} (-1)^r C(n,r) (n-r)^r (n-r-1)^(n-r)`: the inclusion-exclusion
/// sum for `per(J - I)`.
pub fn derangement_identity_sum(n: usize) -> BigInt {
    signed_sum(n, |r| pow_usize(n - r, r) * pow_usize(n - r - 1, n - r))
}

/// The same sum with exponent `r` on the last factor instead of `n - r`.
pub fn derangement_identity_sum_wrong_exponent(n: usize) -> BigInt {
    signed_sum(n, |r| pow_usize(n - r, r) * pow_usize(n - r - 1, r))
}

fn signed_sum(n: usize, f: impl Fn(usize) -> BigInt) -> BigInt {
    (0..n)
        .map(|r| {
            let t = binomial(BigInt::from(n), BigInt::from(r)) * f(r);
            if r % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// `J - I` of order `n`.
pub fn derangement_matrix(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Rational::zero()
        } else {
            Rational::one()
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementCheck {
    pub n: usize,
    pub derangements: BigInt,
    pub permanent: BigInt,
    pub identity_sum: BigInt,
    /// The variant with exponent `r` on `(n-r-1)`; it is not an identity.
    pub wrong_exponent_sum: BigInt,
    pub holds: bool,
}

/// Compares `D_n`, `per(J - I)` and the inclusion-exclusion sum.
pub fn derangement_identity_check(n: usize) -> Result<DerangementCheck> {
    let derangements = derangement(n);
    let permanent = permanent_ryser(&derangement_matrix(n))?.value.to_integer();
    let identity_sum = derangement_identity_sum(n);
    let holds = derangements == permanent && permanent == identity_sum;
    Ok(DerangementCheck {
        n,
        derangements,
        permanent,
        identity_sum,
        wrong_exponent_sum: derangement_identity_sum_wrong_exponent(n),
        holds,
    })
}

/// Number of ways to pick `r` pairwise non-adjacent elements from `n` in a
/// circle: `n/(n-r) · C(n-r, r)`, and 0 for `r > n/2`.
pub fn kaplansky(n: usize, r: usize) -> BigInt {
    if 2 * r > n || r >= n {
        return if r == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    BigInt::from(n) * binomial(BigInt::from(n - r), BigInt::from(r)) / (n - r)
}

/// `x I + y P` with `P` the cyclic shift `j = i + 1 (mod n)`.
pub fn circulant(n: usize, x: &Rational, y: &Rational) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        let mut v = Rational::zero();
        if i == j {
            v += x;
        }
        if j == (i + 1) % n {
            v += y;
        }
        v
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantCheck {
    pub n: usize,
    pub permanent: Rational,
    /// `x^n + y^n`.
    pub closed_form: Rational,
    /// `Σ (-1)^r a_r (xy)^r (x+y)^(n-2r)`.
    pub expansion: Rational,
    pub coefficients: Vec<BigInt>,
    pub holds: bool,
}

/// Evaluates the permanent of `xI + yP` three ways.
pub fn circulant_identity_check(n: usize, x: &Rational, y: &Rational) -> Result<CirculantCheck> {
    if n < 2 {
        return Err(Error::OrderTooSmall { order: n, min: 2 });
    }
    let permanent = permanent(&circulant(n, x, y))?.value;
    let closed_form = Pow::pow(x, n) + Pow::pow(y, n);
    let coefficients: Vec<BigInt> = (0..n).map(|r| kaplansky(n, r)).collect();
    let xy = x * y;
    let s = x + y;
    let expansion: Rational = coefficients
        .iter()
        .enumerate()
        .filter(|(r, _)| 2 * r <= n)
        .map(|(r, a)| {
            let t = Rational::from_integer(a.clone()) * Pow::pow(&xy, r) * Pow::pow(&s, n - 2 * r);
            if r % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let holds = permanent == closed_form && closed_form == expansion;
    Ok(CirculantCheck {
        n,
        permanent,
        closed_form,
        expansion,
        coefficients,
        holds,
    })
}

/// Largest diagonal product `Π a_{iσ(i)}` of a doubly stochastic matrix,
/// with the first maximizing permutation in lexicographic order.
/// Checks that the product is at least `1/n^n`.
pub fn marcus_minc_diagonal(a: &ExactMatrix) -> Result<(Permutation, Rational)> {
    const MAX: usize = 9;
    a.check_doubly_stochastic()?;
    let n = a.rows();
    if n > MAX {
        return Err(Error::OrderTooLarge { order: n, max: MAX });
    }
    let mut best: Option<(Permutation, Rational)> = None;
    let mut perm = Vec::with_capacity(n);
    diagonal_search(a, 0, 0, Rational::one(), &mut perm, &mut best);
    let (perm, product) = best.ok_or_else(|| Error::Invariant("no positive diagonal".into()))?;
    let floor = Rational::new(BigInt::one(), pow_usize(n, n));
    if product < floor {
        return Err(Error::Invariant(format!(
            "largest diagonal product {product} is below 1/{n}^{n}"
        )));
    }
    Ok((perm, product))
}

fn diagonal_search(
    a: &ExactMatrix,
    row: usize,
    used: u32,
    prefix: Rational,
    perm: &mut Vec<usize>,
    best: &mut Option<(Permutation, Rational)>,
) {
    let n = a.rows();
    if row == n {
        if best.as_ref().is_none_or(|(_, b)| prefix > *b) {
            *best = Some((perm.clone(), prefix));
        }
        return;
    }
    // remaining factors are at most 1, so a prefix no larger than the best cannot win
    if best.as_ref().is_some_and(|(_, b)| prefix <= *b) {
        return;
    }
    for j in 0..n {
        let v = a.get(row, j);
        if used & (1 << j) != 0 || !v.is_positive() {
            continue;
        }
        perm.push(j);
        diagonal_search(a, row + 1, used | (1 << j), &prefix * v, perm, best);
        perm.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub jurkat_a: Rational,
    pub jurkat_b: Rational,
    pub jurkat_ab: Rational,
    pub newman_a: Rational,
    pub newman_aat: Rational,
    /// `per(AB) > min(per A, per B)`.
    pub jurkat_refutes: bool,
    /// `per(AA^T) > per(A)`.
    pub newman_refutes: bool,
}

/// Recomputes the permanents of the two classical counterexamples.
pub fn counterexample_suite() -> Result<CounterexampleReport> {
    use crate::data::{jurkat_a, jurkat_b, newman_a};
    let (a, b) = (jurkat_a(), jurkat_b());
    let jurkat_a = permanent(&a)?.value;
    let jurkat_b = permanent(&b)?.value;
    let jurkat_ab = permanent(&a.mul(&b)?)?.value;
    let n = newman_a();
    let newman_a = permanent(&n)?.value;
    let newman_aat = permanent(&n.mul(&n.transpose())?)?.value;
    Ok(CounterexampleReport {
        jurkat_refutes: jurkat_ab > jurkat_a.clone().min(jurkat_b.clone()),
        newman_refutes: newman_aat > newman_a,
        jurkat_a,
        jurkat_b,
        jurkat_ab,
        newman_a,
        newman_aat,
    })
}
