//! Bipartite matching, line covers, systems of distinct representatives,
//! the Birkhoff decomposition and Latin rectangle completion.
//!
//! A zero-one matrix is read as a bipartite graph: rows on one side,
//! columns on the other, a 1 at `(i, j)` joining row `i` to column `j`.
//! Maximum matchings come from augmenting paths with rows scanned in
//! increasing order, so every result is deterministic.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::latin::{LatinRectangle, LatinSquare};
use crate::matrix::{ExactMatrix, Permutation, Rational, ZeroOneMatrix};

/// A set of 1-cells of a zero-one matrix, no two in a common line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    cells: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Matched `(row, col)` pairs sorted by row.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    /// For a perfect matching of a square matrix, the column matched to each row.
    pub fn as_permutation(&self, n: usize) -> Option<Permutation> {
        if self.cells.len() != n {
            return None;
        }
        Some(self.cells.iter().map(|&(_, j)| j).collect())
    }

    /// Checks the matching against `a`: cells hold ones, lines are not shared.
    pub fn is_valid_for(&self, a: &ZeroOneMatrix) -> bool {
        let mut rows = vec![false; a.rows()];
        let mut cols = vec![false; a.cols()];
        self.cells.iter().all(|&(i, j)| {
            i < a.rows()
                && j < a.cols()
                && a.get(i, j)
                && !std::mem::replace(&mut rows[i], true)
                && !std::mem::replace(&mut cols[j], true)
        })
    }
}

/// Rows and columns that together contain every 1 of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCover {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl LineCover {
    pub fn len(&self) -> usize {
        self.rows.len() + self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, a: &ZeroOneMatrix) -> bool {
        let mut row_in = vec![false; a.rows()];
        let mut col_in = vec![false; a.cols()];
        for &i in &self.rows {
            row_in[i] = true;
        }
        for &j in &self.cols {
            col_in[j] = true;
        }
        (0..a.rows()).all(|i| row_in[i] || a.row_ones(i).all(|j| col_in[j]))
    }
}

/// Matching state over an adjacency list from left to right vertices.
struct Bipartite<'a> {
    adj: &'a [Vec<usize>],
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl<'a> Bipartite<'a> {
    fn maximum(adj: &'a [Vec<usize>], right_size: usize) -> Self {
        let mut g = Self {
            adj,
            left: vec![None; adj.len()],
            right: vec![None; right_size],
        };
        let mut seen = vec![false; right_size];
        for u in 0..adj.len() {
            seen.fill(false);
            g.augment(u, &mut seen);
        }
        g
    }

    fn augment(&mut self, u: usize, seen: &mut [bool]) -> bool {
        for &v in &self.adj[u] {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            if self.right[v].is_none_or(|w| self.augment(w, seen)) {
                self.left[u] = Some(v);
                self.right[v] = Some(u);
                return true;
            }
        }
        false
    }

    fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }

    /// Vertices reachable from unmatched left vertices by alternating paths.
    fn alternating_reach(&self) -> (Vec<bool>, Vec<bool>) {
        let mut left_seen = vec![false; self.left.len()];
        let mut right_seen = vec![false; self.right.len()];
        let mut stack: Vec<usize> = (0..self.left.len())
            .filter(|&u| self.left[u].is_none())
            .collect();
        for &u in &stack {
            left_seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if std::mem::replace(&mut right_seen[v], true) {
                    continue;
                }
                if let Some(w) = self.right[v] {
                    if !std::mem::replace(&mut left_seen[w], true) {
                        stack.push(w);
                    }
                }
            }
        }
        (left_seen, right_seen)
    }
}

fn row_adjacency(a: &ZeroOneMatrix) -> Vec<Vec<usize>> {
    (0..a.rows()).map(|i| a.row_ones(i).collect()).collect()
}

/// A maximum set of ones with no two in a common row or column.
pub fn max_matching(a: &ZeroOneMatrix) -> Matching {
    let adj = row_adjacency(a);
    let g = Bipartite::maximum(&adj, a.cols());
    Matching {
        cells: g
            .left
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| (i, j)))
            .collect(),
    }
}

/// A minimum set of lines containing every 1.
///
/// Built from a maximum matching by alternating search from the unmatched
/// columns: the cover is the reached rows plus the unreached columns, and
/// its size equals the matching size.
pub fn min_line_cover(a: &ZeroOneMatrix) -> LineCover {
    let adj = row_adjacency(&a.transpose());
    let g = Bipartite::maximum(&adj, a.rows());
    let (cols_seen, rows_seen) = g.alternating_reach();
    let cover = LineCover {
        rows: (0..a.rows()).filter(|&i| rows_seen[i]).collect(),
        cols: (0..a.cols()).filter(|&j| !cols_seen[j]).collect(),
    };
    debug_assert_eq!(cover.len(), g.size());
    debug_assert!(cover.covers(a));
    cover
}

/// Subsets `S_1, ..., S_m` of the ground set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Sets are sorted and deduplicated; elements must lie in `0..ground`.
    pub fn new(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.iter().find(|&&x| x >= ground) {
                return Err(Error::Malformed(format!(
                    "set {i} contains {x}, outside the ground set of size {ground}"
                )));
            }
        }
        Ok(Self { ground, sets })
    }

    /// Row `i` of the incidence matrix lists the members of `S_i`.
    pub fn from_incidence(a: &ZeroOneMatrix) -> Self {
        Self {
            ground: a.cols(),
            sets: row_adjacency(a),
        }
    }

    pub fn incidence(&self) -> ZeroOneMatrix {
        let mut a = ZeroOneMatrix::zeros(self.sets.len(), self.ground);
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                a.set(i, x, true);
            }
        }
        a
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Distinct representatives `a_i ∈ S_i`, listed by set index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sdr(pub Vec<usize>);

/// Sets whose union is smaller than their number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    pub indices: Vec<usize>,
    pub union: Vec<usize>,
}

/// Finds a system of distinct representatives, or a witness that Hall's
/// condition fails.
pub fn find_sdr(sys: &SetSystem) -> std::result::Result<Sdr, HallViolator> {
    let g = Bipartite::maximum(&sys.sets, sys.ground);
    if g.size() == sys.sets.len() {
        return Ok(Sdr(g
            .left
            .iter()
            .map(|m| m.expect("all matched"))
            .collect()));
    }
    let (sets_seen, elems_seen) = g.alternating_reach();
    let violator = HallViolator {
        indices: (0..sys.sets.len()).filter(|&i| sets_seen[i]).collect(),
        union: (0..sys.ground).filter(|&x| elems_seen[x]).collect(),
    };
    debug_assert!(violator.union.len() < violator.indices.len());
    Err(violator)
}

/// Checks a claimed SDR against the system.
pub fn is_sdr(sys: &SetSystem, sdr: &Sdr) -> bool {
    let mut used = vec![false; sys.ground];
    sdr.0.len() == sys.sets.len()
        && sdr.0.iter().zip(&sys.sets).all(|(&a, s)| {
            a < sys.ground && s.binary_search(&a).is_ok() && !std::mem::replace(&mut used[a], true)
        })
}

/// `A = c_1 P_1 + ... + c_t P_t` with positive exact coefficients summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffDecomposition {
    pub terms: Vec<(Rational, Permutation)>,
}

impl BirkhoffDecomposition {
    pub fn reconstruct(&self, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        for (c, perm) in &self.terms {
            for (i, &j) in perm.iter().enumerate() {
                let v = m.get(i, j) + c;
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Largest number of terms the extraction can produce for order `n`.
pub fn birkhoff_term_bound(n: usize) -> usize {
    match n {
        0 => 0,
        _ => (n - 1) * (n - 1) + 1,
    }
}

/// Decomposes a doubly stochastic matrix into permutation matrices.
///
/// Each step takes a perfect matching on the positive entries, uses its
/// smallest entry as the coefficient, and subtracts.
pub fn birkhoff_decompose(a: &ExactMatrix) -> Result<BirkhoffDecomposition> {
    a.check_doubly_stochastic()?;
    let n = a.rows();
    let mut rest = a.clone();
    let mut terms = Vec::new();
    while rest.entries().iter().any(|v| v.is_positive()) {
        let support = rest.support();
        let perm = max_matching(&support)
            .as_permutation(n)
            .ok_or_else(|| Error::Invariant("positive entries admit no perfect matching".into()))?;
        let c = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| rest.get(i, j).clone())
            .min()
            .expect("n > 0");
        for (i, &j) in perm.iter().enumerate() {
            let v = rest.get(i, j) - &c;
            rest.set(i, j, v);
        }
        terms.push((c, perm));
        if terms.len() > birkhoff_term_bound(n) {
            return Err(Error::Invariant(format!(
                "more than {} terms",
                birkhoff_term_bound(n)
            )));
        }
    }
    let dec = BirkhoffDecomposition { terms };
    let total: Rational = dec.terms.iter().map(|(c, _)| c).sum();
    if (n > 0 && !total.is_one()) || dec.reconstruct(n) != *a {
        return Err(Error::Invariant(
            "decomposition does not reconstruct".into(),
        ));
    }
    Ok(dec)
}

/// Splits a square zero-one matrix with all line sums `d` into `d`
/// permutation matrices.
pub fn regular_01_decompose(a: &ZeroOneMatrix) -> Result<Vec<Permutation>> {
    let d = a.regular_degree().ok_or_else(|| {
        Error::NotRegular(format!(
            "row sums {:?}, column sums {:?}",
            a.row_sums(),
            a.col_sums()
        ))
    })?;
    let n = a.rows();
    let mut rest = a.clone();
    let mut perms = Vec::with_capacity(d);
    for _ in 0..d {
        let perm = max_matching(&rest)
            .as_permutation(n)
            .ok_or_else(|| Error::Invariant("regular matrix without perfect matching".into()))?;
        for (i, &j) in perm.iter().enumerate() {
            rest.set(i, j, false);
        }
        perms.push(perm);
    }
    debug_assert_eq!(rest.count_ones(), 0);
    Ok(perms)
}

/// Completes an `r x n` Latin rectangle to a Latin square.
///
/// Column `i` misses the symbols `S_i`; the incidence matrix of the `S_i`
/// has all line sums `n - r` and splits into `n - r` permutations, each of
/// which becomes a new row.
pub fn complete_rectangle(rect: &LatinRectangle) -> Result<LatinSquare> {
    let n = rect.order();
    let r = rect.rows();
    if rect.cols() != n {
        return Err(Error::NotApplicable(format!(
            "needs {n} columns, got {}",
            rect.cols()
        )));
    }
    let missing =
        ZeroOneMatrix::from_fn(n, n, |col, sym| (0..r).all(|row| rect.get(row, col) != sym));
    let perms = regular_01_decompose(&missing)?;
    let mut cells = rect.cells().to_vec();
    for perm in perms {
        cells.extend(perm.iter().map(|&sym| sym as u8));
    }
    LatinSquare::from_cells(n, cells)
}

/// Outcome of the `N(i) >= r + s - n` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completability {
    /// `N(i)` for every symbol.
    pub counts: Vec<usize>,
    /// `r + s - n`, possibly negative.
    pub threshold: i64,
    pub completable: bool,
    pub completion: Option<LatinSquare>,
}

/// Decides whether an `r x s` rectangle completes to a square of its order,
/// and builds a completion when it does.
///
/// Columns are appended one at a time. Each new column is an SDR of the
/// symbols still free in each row, padded with `n - r` filler sets over the
/// non-tight symbols so that every symbol at the threshold is forced in.
pub fn completable_rs(rect: &LatinRectangle) -> Result<Completability> {
    let n = rect.order();
    let r = rect.rows();
    let s = rect.cols();
    let counts = rect.symbol_counts();
    let threshold = r as i64 + s as i64 - n as i64;
    let completable = counts.iter().all(|&c| c as i64 >= threshold);
    if !completable {
        return Ok(Completability {
            counts,
            threshold,
            completable,
            completion: None,
        });
    }
    let mut rows: Vec<Vec<u8>> = (0..r).map(|i| rect.row(i).to_vec()).collect();
    let mut current = counts.clone();
    for width in s..n {
        let tight = |k: usize| current[k] as i64 == r as i64 + width as i64 - n as i64;
        let mut sets: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| (0..n).filter(|k| !row.contains(&(*k as u8))).collect())
            .collect();
        let filler: Vec<usize> = (0..n).filter(|&k| !tight(k)).collect();
        sets.extend(std::iter::repeat_n(filler, n - r));
        let sys = SetSystem::new(n, sets)?;
        let Sdr(reps) = find_sdr(&sys)
            .map_err(|v| Error::Invariant(format!("column {width} cannot be extended: {v:?}")))?;
        for (row, &sym) in rows.iter_mut().zip(&reps) {
            row.push(sym as u8);
            current[sym] += 1;
        }
    }
    let wide = LatinRectangle::from_cells(r, n, n, rows.concat())?;
    let square = complete_rectangle(&wide)?;
    debug_assert!((0..r).all(|i| (0..s).all(|j| square.get(i, j) == rect.get(i, j))));
    Ok(Completability {
        counts,
        threshold,
        completable,
        completion: Some(square),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::konig_example;
    use crate::matrix::rational;

    #[test]
    fn worked_example_matching_and_cover() {
        let a = konig_example();
        let m = max_matching(&a);
        assert_eq!(m.len(), 3);
        assert!(m.is_valid_for(&a));
        let cover = min_line_cover(&a);
        // first row plus the first two columns
        assert_eq!(cover.rows, vec![0]);
        assert_eq!(cover.cols, vec![0, 1]);
        assert!(cover.covers(&a));
    }

    #[test]
    fn degenerate_matrices() {
        let z = ZeroOneMatrix::zeros(3, 4);
        assert!(max_matching(&z).is_empty());
        assert!(min_line_cover(&z).is_empty());
        let id = ZeroOneMatrix::identity(5);
        assert_eq!(max_matching(&id).len(), 5);
        assert_eq!(min_line_cover(&id).len(), 5);
    }

    #[test]
    fn pigeonhole_violator() {
        let sys = SetSystem::new(1, vec![vec![0], vec![0]]).unwrap();
        let v = find_sdr(&sys).unwrap_err();
        assert_eq!(v.indices, vec![0, 1]);
        assert_eq!(v.union, vec![0]);
    }

    #[test]
    fn full_sets_have_an_sdr() {
        let sys = SetSystem::new(4, vec![(0..4).collect(); 4]).unwrap();
        let sdr = find_sdr(&sys).unwrap();
        assert!(is_sdr(&sys, &sdr));
    }

    #[test]
    fn set_elements_must_be_in_ground() {
        assert!(SetSystem::new(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn birkhoff_two_by_two() {
        let x = rational(1, 3);
        let y = rational(2, 3);
        let a =
            ExactMatrix::from_rows(vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]])
                .unwrap();
        let mut terms = birkhoff_decompose(&a).unwrap().terms;
        terms.sort();
        assert_eq!(terms, vec![(x, vec![0, 1]), (y, vec![1, 0])]);
    }

    #[test]
    fn birkhoff_permutation_matrix() {
        let p = ExactMatrix::permutation(&[2, 0, 1]);
        let dec = birkhoff_decompose(&p).unwrap();
        assert_eq!(dec.terms, vec![(Rational::one(), vec![2, 0, 1])]);
    }

    #[test]
    fn birkhoff_uniform() {
        let a = ExactMatrix::from_fn(3, 3, |_, _| rational(1, 3));
        let dec = birkhoff_decompose(&a).unwrap();
        assert!(dec.terms.len() <= birkhoff_term_bound(3));
        assert_eq!(dec.reconstruct(3), a);
    }

    #[test]
    fn birkhoff_rejects_bad_input() {
        let a = ExactMatrix::from_integers(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(
            birkhoff_decompose(&a),
            Err(Error::NotDoublyStochastic(_))
        ));
        let r = ExactMatrix::zeros(2, 3);
        assert!(matches!(
            birkhoff_decompose(&r),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn regular_decomposition_of_j3() {
        let perms = regular_01_decompose(&ZeroOneMatrix::ones(3, 3)).unwrap();
        assert_eq!(perms.len(), 3);
        let mut sum = ZeroOneMatrix::zeros(3, 3);
        for p in &perms {
            for (i, &j) in p.iter().enumerate() {
                assert!(!sum.get(i, j));
                sum.set(i, j, true);
            }
        }
        assert_eq!(sum, ZeroOneMatrix::ones(3, 3));
        assert_eq!(
            regular_01_decompose(&ZeroOneMatrix::identity(4)).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        let irregular = ZeroOneMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(
            regular_01_decompose(&irregular),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn completes_small_rectangles() {
        let one = LatinRectangle::new(3, &[vec![0, 1, 2]]).unwrap();
        let sq = complete_rectangle(&one).unwrap();
        assert_eq!(sq.row(0), &[0, 1, 2]);
        let two = LatinRectangle::new(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(complete_rectangle(&two).unwrap(), LatinSquare::cyclic(2));
        let narrow = LatinRectangle::new(3, &[vec![0, 1]]).unwrap();
        assert!(complete_rectangle(&narrow).is_err());
    }

    #[test]
    fn completability_condition() {
        let single = LatinRectangle::new(2, &[vec![0]]).unwrap();
        let c = completable_rs(&single).unwrap();
        assert!(c.completable);
        assert_eq!(c.threshold, 0);
        assert!(c.completion.is_some());

        let rect = LatinRectangle::new(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let c = completable_rs(&rect).unwrap();
        assert_eq!(c.counts, vec![1, 2, 1]);
        assert_eq!(c.threshold, 1);
        let sq = c.completion.unwrap();
        assert_eq!(
            (sq.get(0, 0), sq.get(0, 1), sq.get(1, 0), sq.get(1, 1)),
            (0, 1, 1, 2)
        );

        // symbol 2 never appears in a 2x2 block that needs it once
        let stuck = LatinRectangle::new(3, &[vec![0, 1], vec![1, 0]]).unwrap();
        let c = completable_rs(&stuck).unwrap();
        assert!(!c.completable);
        assert!(c.completion.is_none());
    }
}
