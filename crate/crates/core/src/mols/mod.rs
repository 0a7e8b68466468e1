//! Orthogonal Latin squares: orthogonality, complete systems over finite
//! fields, schemas (orthogonal arrays), MacNeish products and projective
//! planes.

mod field;
mod plane;
mod schema;

pub use field::{is_prime, FiniteField, MAX_FIELD_SIZE};
pub use plane::{plane_from_system, system_from_plane, verify_plane, PlaneIncidence};
pub use schema::{macneish_product, schema_to_system, system_to_schema, Schema};

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, MAX_ORDER};

/// True when superimposing `a` and `b` gives `n²` distinct ordered pairs.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    let n = a.order();
    if b.order() != n {
        return Err(Error::DimensionMismatch(format!(
            "orders {n} and {}",
            b.order()
        )));
    }
    let mut seen = vec![false; n * n];
    Ok(a.cells()
        .iter()
        .zip(b.cells())
        .all(|(&x, &y)| !std::mem::replace(&mut seen[x as usize * n + y as usize], true)))
}

/// Pairwise orthogonal Latin squares of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalSystem {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl OrthogonalSystem {
    /// Checks common order and pairwise orthogonality, and asserts that a
    /// system of at least two squares of order `n ≥ 3` has at most `n - 1`.
    pub fn new(order: usize, squares: Vec<LatinSquare>) -> Result<Self> {
        if let Some(bad) = squares.iter().position(|s| s.order() != order) {
            return Err(Error::InvalidSystem(format!(
                "square {bad} has order {}, expected {order}",
                squares[bad].order()
            )));
        }
        for (x, a) in squares.iter().enumerate() {
            for (y, b) in squares.iter().enumerate().skip(x + 1) {
                if !are_orthogonal(a, b)? {
                    return Err(Error::InvalidSystem(format!(
                        "squares {x} and {y} are not orthogonal"
                    )));
                }
            }
        }
        let t = squares.len();
        if t >= 2 && order >= 3 && t > order - 1 {
            return Err(Error::Invariant(format!(
                "{t} orthogonal squares of order {order}"
            )));
        }
        Ok(Self { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// `n - 1` squares.
    pub fn is_complete(&self) -> bool {
        self.order >= 2 && self.squares.len() == self.order - 1
    }

    pub fn truncate(mut self, t: usize) -> Self {
        self.squares.truncate(t);
        self
    }

    pub fn into_squares(self) -> Vec<LatinSquare> {
        self.squares
    }
}

/// The `n - 1` squares `A_e[i][j] = e·i + j` over the field, one for each
/// nonzero element `e` in increasing order.
pub fn complete_system(field: &FiniteField) -> Result<OrthogonalSystem> {
    let n = field.size();
    if n < 3 {
        return Err(Error::OrderTooSmall { order: n, min: 3 });
    }
    let squares = (1..n)
        .map(|e| {
            let cells = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| field.add(field.mul(e, i), j) as u8)
                .collect();
            LatinSquare::from_cells(n, cells)
        })
        .collect::<Result<Vec<_>>>()?;
    OrthogonalSystem::new(n, squares)
}

/// Prime-power factorization `n = p_1^a_1 ··· p_N^a_N`, primes increasing.
pub fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `min (p_i^a_i - 1)` over the prime-power factors of `n`.
pub fn macneish_bound(n: u64) -> u64 {
    prime_power_factors(n)
        .iter()
        .map(|&(p, a)| p.pow(a) - 1)
        .min()
        .unwrap_or(0)
}

/// `t = min (p_i^a_i - 1)` orthogonal squares of order `n`, from complete
/// systems of the prime-power factors joined by [`macneish_product`].
pub fn macneish_mols(n: usize) -> Result<OrthogonalSystem> {
    if n < 3 {
        return Err(Error::OrderTooSmall { order: n, min: 3 });
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_ORDER,
        });
    }
    let t = macneish_bound(n as u64) as usize;
    if t < 2 {
        return Err(Error::NotApplicable(format!(
            "order {n} has a prime-power factor 2, so the construction gives fewer than 2 squares"
        )));
    }
    let mut product: Option<Schema> = None;
    for (p, a) in prime_power_factors(n as u64) {
        let sys = complete_system(&FiniteField::new(p, a)?)?.truncate(t);
        let sch = system_to_schema(&sys)?;
        product = Some(match product {
            None => sch,
            Some(acc) => macneish_product(&acc, &sch)?,
        });
    }
    schema_to_system(&product.expect("n >= 3 has a factor"))
}
