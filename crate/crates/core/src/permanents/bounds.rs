//! Upper and lower bounds for permanents, and the sandwich for `L(r, n)`.
//!
//! Bounds with fractional exponents are compared in two stages. A
//! floating-point comparison of logarithms decides when the two sides are
//! separated by far more than its rounding error. Otherwise both sides are
//! raised to the lcm of the exponent denominators and compared exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, ToPrimitive};

use super::{count_rectangles, factorial, permanent};
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Rational};

/// `base^(num/den)` with a positive base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerFactor {
    pub base: Rational,
    pub num: u64,
    pub den: u64,
}

impl PowerFactor {
    pub fn new(base: Rational, num: u64, den: u64) -> Self {
        assert!(
            den > 0 && base.is_positive(),
            "positive base and denominator"
        );
        Self { base, num, den }
    }

    fn ln(&self) -> f64 {
        self.num as f64 / self.den as f64 * ln_rational(&self.base)
    }
}

/// Outcome of comparing a value with a product of powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    /// Neither stage could separate the sides within its limits.
    Inconclusive,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rational(x: &Rational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Bit budget for the exact stage.
const EXACT_BIT_LIMIT: f64 = 6.4e7;

/// Compares `lhs` with `Π base_i^(num_i/den_i)`.
pub fn compare_with_power_product(lhs: &Rational, factors: &[PowerFactor]) -> Comparison {
    if !lhs.is_positive() {
        return Comparison::Less;
    }
    let left = ln_rational(lhs);
    let terms: Vec<f64> = factors.iter().map(PowerFactor::ln).collect();
    let right: f64 = terms.iter().sum();
    let scale = 1.0 + left.abs() + terms.iter().map(|t| t.abs()).sum::<f64>();
    let tolerance = 1e-9 * scale;
    if left - right > tolerance {
        return Comparison::Greater;
    }
    if right - left > tolerance {
        return Comparison::Less;
    }
    let l = factors.iter().fold(1u64, |acc, f| acc.lcm(&f.den));
    let size_bits = |x: &Rational| (x.numer().bits() + x.denom().bits()) as f64;
    let estimate = l as f64 * size_bits(lhs)
        + factors
            .iter()
            .map(|f| (f.num * (l / f.den)) as f64 * size_bits(&f.base))
            .sum::<f64>();
    if estimate > EXACT_BIT_LIMIT {
        return Comparison::Inconclusive;
    }
    let lhs_pow = Pow::pow(lhs, l);
    let rhs_pow: Rational = factors
        .iter()
        .map(|f| Pow::pow(&f.base, f.num * (l / f.den)))
        .product();
    lhs_pow.cmp(&rhs_pow).into()
}

/// Verdict for one bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Strict inequality in the bound's direction.
    Holds,
    /// The bound is attained.
    Equality,
    Violated,
    Inconclusive,
    Skipped(String),
}

impl Verdict {
    fn lower(c: Comparison) -> Self {
        match c {
            Comparison::Greater => Verdict::Holds,
            Comparison::Equal => Verdict::Equality,
            Comparison::Less => Verdict::Violated,
            Comparison::Inconclusive => Verdict::Inconclusive,
        }
    }

    fn upper(c: Comparison) -> Self {
        match c {
            Comparison::Less => Verdict::Holds,
            Comparison::Equal => Verdict::Equality,
            Comparison::Greater => Verdict::Violated,
            Comparison::Inconclusive => Verdict::Inconclusive,
        }
    }

    /// `Holds` or `Equality`.
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Equality)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Equality => write!(f, "holds with equality"),
            Verdict::Violated => write!(f, "violated"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
            Verdict::Skipped(why) => write!(f, "skipped ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    /// `"per >= bound"` or `"per <= bound"` style statement.
    pub statement: &'static str,
    /// Exact value when rational, otherwise a decimal approximation.
    pub value: String,
    pub verdict: Verdict,
    /// False for conjectured bounds, whose failures are findings rather
    /// than inconsistencies.
    pub gating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub order: usize,
    pub permanent: Rational,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// Gating bounds that are violated.
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.gating && e.verdict == Verdict::Violated)
    }

    pub fn is_consistent(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn approx(factors: &[PowerFactor]) -> String {
    format!(
        "{:.6}",
        factors.iter().map(PowerFactor::ln).sum::<f64>().exp()
    )
}

fn rational_from(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn exact_entry(
    name: &'static str,
    statement: &'static str,
    per: &Rational,
    bound: Rational,
    lower: bool,
) -> BoundEntry {
    let c: Comparison = per.cmp(&bound).into();
    BoundEntry {
        name,
        statement,
        value: bound.to_string(),
        verdict: if lower {
            Verdict::lower(c)
        } else {
            Verdict::upper(c)
        },
        gating: true,
    }
}

fn skipped(name: &'static str, statement: &'static str, why: &str, gating: bool) -> BoundEntry {
    BoundEntry {
        name,
        statement,
        value: "-".into(),
        verdict: Verdict::Skipped(why.into()),
        gating,
    }
}

pub const VAN_DER_WAERDEN: &str = "van der Waerden";
pub const JURKAT: &str = "row/column sum product";
pub const HALL: &str = "Hall";
pub const MINC: &str = "Minc";
pub const BREGMAN: &str = "Bregman";
pub const MINC_SECOND: &str = "Minc second conjecture";

/// Evaluates every bound whose hypothesis the matrix meets.
///
/// - doubly stochastic: `per >= n!/n^n`
/// - nonnegative, sums sorted increasingly: `per <= Π min(r_j, s_j)`
/// - zero-one with all line sums `k`: `per >= k!`
/// - zero-one with row sums `r_j`: `per <= Π (r_j+1)/2`,
///   `per <= Π (r_j!)^(1/r_j)`, and the conjectured
///   `per <= Π (r_j!)^(1/n) ((r_j+1)/2)^((n-r_j)/n)`, which does not gate.
pub fn bound_report(a: &ExactMatrix) -> Result<BoundReport> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let per = permanent(a)?.value;
    let mut entries = Vec::new();

    if a.is_doubly_stochastic() {
        let bound = rational_from(&factorial(n)) / Pow::pow(int(n), n);
        entries.push(exact_entry(
            VAN_DER_WAERDEN,
            "per >= n!/n^n",
            &per,
            bound,
            true,
        ));
    } else {
        entries.push(skipped(
            VAN_DER_WAERDEN,
            "per >= n!/n^n",
            "not doubly stochastic",
            true,
        ));
    }

    if a.is_nonnegative() {
        let mut r = a.row_sums();
        let mut s = a.col_sums();
        r.sort();
        s.sort();
        let bound: Rational = r
            .iter()
            .zip(&s)
            .map(|(x, y)| x.clone().min(y.clone()))
            .product();
        entries.push(exact_entry(
            JURKAT,
            "per <= prod min(r_j, s_j)",
            &per,
            bound,
            false,
        ));
    } else {
        entries.push(skipped(
            JURKAT,
            "per <= prod min(r_j, s_j)",
            "negative entry",
            true,
        ));
    }

    let Some(z) = a.to_zero_one() else {
        for (name, st, gating) in [
            (HALL, "per >= k!", true),
            (MINC, "per <= prod (r_j+1)/2", true),
            (BREGMAN, "per <= prod (r_j!)^(1/r_j)", true),
            (
                MINC_SECOND,
                "per <= prod (r_j!)^(1/n) ((r_j+1)/2)^((n-r_j)/n)",
                false,
            ),
        ] {
            entries.push(skipped(name, st, "not a zero-one matrix", gating));
        }
        return Ok(BoundReport {
            order: n,
            permanent: per,
            entries,
        });
    };
    let rows = z.row_sums();

    match z.regular_degree() {
        Some(k) if k >= 1 => {
            let bound = rational_from(&factorial(k));
            entries.push(exact_entry(HALL, "per >= k!", &per, bound, true));
        }
        _ => entries.push(skipped(
            HALL,
            "per >= k!",
            "line sums not all equal to some k >= 1",
            true,
        )),
    }

    let minc: Rational = rows
        .iter()
        .map(|&r| Rational::new(BigInt::from(r + 1), BigInt::from(2)))
        .product();
    entries.push(exact_entry(
        MINC,
        "per <= prod (r_j+1)/2",
        &per,
        minc,
        false,
    ));

    if rows.contains(&0) {
        entries.push(skipped(
            BREGMAN,
            "per <= prod (r_j!)^(1/r_j)",
            "zero row",
            true,
        ));
    } else {
        let factors: Vec<PowerFactor> = rows
            .iter()
            .map(|&r| PowerFactor::new(rational_from(&factorial(r)), 1, r as u64))
            .collect();
        entries.push(BoundEntry {
            name: BREGMAN,
            statement: "per <= prod (r_j!)^(1/r_j)",
            value: approx(&factors),
            verdict: Verdict::upper(compare_with_power_product(&per, &factors)),
            gating: true,
        });
    }

    let mut factors = Vec::new();
    for &r in &rows {
        factors.push(PowerFactor::new(rational_from(&factorial(r)), 1, n as u64));
        if r < n {
            factors.push(PowerFactor::new(
                Rational::new(BigInt::from(r + 1), BigInt::from(2)),
                (n - r) as u64,
                n as u64,
            ));
        }
    }
    entries.push(BoundEntry {
        name: MINC_SECOND,
        statement: "per <= prod (r_j!)^(1/n) ((r_j+1)/2)^((n-r_j)/n)",
        value: approx(&factors),
        verdict: Verdict::upper(compare_with_power_product(&per, &factors)),
        gating: false,
    });

    Ok(BoundReport {
        order: n,
        permanent: per,
        entries,
    })
}

/// `L(r, n)` against its lower and upper estimates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub r: usize,
    pub n: usize,
    pub count: BigUint,
    /// `(n!/n^n)^r Π_{j≤r} (n+1-j)^n`.
    pub lower: Rational,
    pub lower_verdict: Verdict,
    /// `Π_{j≤r} ((n+1-j)!)^(n/(n+1-j))`, decimal approximation.
    pub upper: String,
    pub upper_verdict: Verdict,
    /// `Π_{j≤r} (n+1-j)^(n/(n+1-j))`, without the factorial; reported only.
    pub upper_without_factorial: String,
    pub upper_without_factorial_verdict: Verdict,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.lower_verdict.is_satisfied() && self.upper_verdict.is_satisfied()
    }
}

/// Counts `r x n` Latin rectangles and compares the count with both estimates.
pub fn rectangle_sandwich_check(r: usize, n: usize) -> Result<SandwichReport> {
    if r == 0 {
        return Err(Error::OrderTooSmall { order: r, min: 1 });
    }
    let count = count_rectangles(r, n, false)?;
    let value = rational_from(&count);
    let vdw = rational_from(&factorial(n)) / Pow::pow(int(n), n);
    let lower: Rational = Pow::pow(&vdw, r)
        * (1..=r)
            .map(|j| Pow::pow(int(n + 1 - j), n))
            .product::<Rational>();
    let lower_verdict = Verdict::lower(value.cmp(&lower).into());
    let with_factorial: Vec<PowerFactor> = (1..=r)
        .map(|j| {
            PowerFactor::new(
                rational_from(&factorial(n + 1 - j)),
                n as u64,
                (n + 1 - j) as u64,
            )
        })
        .collect();
    let without: Vec<PowerFactor> = (1..=r)
        .map(|j| PowerFactor::new(int(n + 1 - j), n as u64, (n + 1 - j) as u64))
        .collect();
    Ok(SandwichReport {
        r,
        n,
        lower,
        lower_verdict,
        upper: approx(&with_factorial),
        upper_verdict: Verdict::upper(compare_with_power_product(&value, &with_factorial)),
        upper_without_factorial: approx(&without),
        upper_without_factorial_verdict: Verdict::upper(compare_with_power_product(
            &value, &without,
        )),
        count,
    })
}
