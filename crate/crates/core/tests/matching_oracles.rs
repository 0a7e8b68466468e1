mod common;

use common::{all_zero_one, brute_completion_exists, injections, permutations, rng};
use rand::Rng;
use ryserlab::data::konig_example;
use ryserlab::latin::LatinRectangle;
use ryserlab::matching::{
    birkhoff_decompose, birkhoff_term_bound, completable_rs, complete_rectangle, find_sdr, is_sdr,
    max_matching, min_line_cover, regular_01_decompose, SetSystem,
};
use ryserlab::matrix::ZeroOneMatrix;
use ryserlab::permanents::permanent_zero_one;
use ryserlab::random::{random_doubly_stochastic, random_zero_one};

/// Smallest number of lines covering every 1, over all line subsets.
fn brute_min_cover(a: &ZeroOneMatrix) -> usize {
    let (m, n) = (a.rows(), a.cols());
    (0u32..1 << (m + n))
        .filter(|mask| {
            (0..m).all(|i| {
                (0..n).all(|j| !a.get(i, j) || mask >> i & 1 == 1 || mask >> (m + j) & 1 == 1)
            })
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn konig_worked_example() {
    let a = konig_example();
    let m = max_matching(&a);
    let c = min_line_cover(&a);
    assert_eq!((m.len(), c.len()), (3, 3));
    assert!(m.is_valid_for(&a) && c.covers(&a));
    assert_eq!(brute_min_cover(&a), 3);
}

#[test]
fn konig_equality_on_random_matrices() {
    let mut rng = rng(11);
    for case in 0..1000 {
        let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let a = random_zero_one(m, n, rng.random_range(0.1..0.9), &mut rng);
        let matching = max_matching(&a);
        let cover = min_line_cover(&a);
        assert!(matching.is_valid_for(&a), "case {case}");
        assert!(cover.covers(&a), "case {case}");
        assert_eq!(matching.len(), cover.len(), "case {case}");
        if m <= 6 && n <= 6 {
            assert_eq!(cover.len(), brute_min_cover(&a), "case {case}");
        }
    }
}

fn hall_holds(sets: &[Vec<usize>]) -> bool {
    (1u32..1 << sets.len()).all(|mask| {
        let union: u32 = (0..sets.len())
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| sets[i].iter())
            .fold(0, |u, &x| u | 1 << x);
        union.count_ones() >= mask.count_ones()
    })
}

#[test]
fn hall_theorem_exhaustive_over_four_elements() {
    let ground = 4;
    for m in 1..=4u32 {
        for code in 0u32..1 << (4 * m) {
            let sets: Vec<Vec<usize>> = (0..m)
                .map(|i| {
                    (0..ground)
                        .filter(|&x| code >> (4 * i + x as u32) & 1 == 1)
                        .collect()
                })
                .collect();
            let sys = SetSystem::new(ground, sets.clone()).unwrap();
            match find_sdr(&sys) {
                Ok(sdr) => {
                    assert!(hall_holds(&sets), "{sets:?}");
                    assert!(is_sdr(&sys, &sdr));
                }
                Err(v) => {
                    assert!(!hall_holds(&sets), "{sets:?}");
                    let union: std::collections::BTreeSet<usize> = v
                        .indices
                        .iter()
                        .flat_map(|&i| sets[i].iter().copied())
                        .collect();
                    assert_eq!(union.into_iter().collect::<Vec<_>>(), v.union);
                    assert!(v.union.len() < v.indices.len());
                }
            }
        }
    }
}

#[test]
fn pigeonhole_violator() {
    let sys = SetSystem::new(1, vec![vec![0], vec![0]]).unwrap();
    let v = find_sdr(&sys).unwrap_err();
    assert_eq!((v.indices, v.union), (vec![0, 1], vec![0]));
}

#[test]
fn sdr_count_is_permanent_of_incidence() {
    let mut rng = rng(5);
    for _ in 0..300 {
        let m = rng.random_range(1..=5);
        let n = rng.random_range(m..=6);
        let a = random_zero_one(m, n, 0.5, &mut rng);
        let sys = SetSystem::from_incidence(&a);
        let count = injections(m, n)
            .into_iter()
            .filter(|f| f.iter().enumerate().all(|(i, x)| sys.sets()[i].contains(x)))
            .count();
        assert_eq!(permanent_zero_one(&a).unwrap(), count.into());
    }
}

fn normalized_two_row_rectangles(n: usize) -> Vec<LatinRectangle> {
    permutations(n)
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
        .map(|p| LatinRectangle::new(n, &[(0..n).collect(), p]).unwrap())
        .collect()
}

#[test]
fn every_normalized_two_by_five_rectangle_completes() {
    let rects = normalized_two_row_rectangles(5);
    assert_eq!(rects.len(), 44);
    for rect in rects {
        let rows: Vec<Vec<Option<usize>>> = (0..2)
            .map(|i| rect.row(i).iter().map(|&v| Some(v as usize)).collect())
            .collect();
        assert!(brute_completion_exists(5, &rows));
        let sq = complete_rectangle(&rect).unwrap();
        for i in 0..2 {
            assert_eq!(sq.row(i), rect.row(i));
        }
    }
}

#[test]
fn deficiency_sets_of_two_by_four_rectangles() {
    for rect in normalized_two_row_rectangles(4) {
        // column j misses the symbols not yet used in it
        let missing =
            ZeroOneMatrix::from_fn(4, 4, |j, k| (0..2).all(|i| rect.row(i)[j] as usize != k));
        assert_eq!(missing.regular_degree(), Some(2));
        let sys = SetSystem::from_incidence(&missing);
        let brute = permutations(4)
            .into_iter()
            .any(|p| p.iter().enumerate().all(|(j, &k)| missing.get(j, k)));
        assert!(brute);
        assert!(find_sdr(&sys).is_ok());
        let perms = regular_01_decompose(&missing).unwrap();
        assert_eq!(perms.len(), 2);
        let mut sum = ZeroOneMatrix::zeros(4, 4);
        for p in &perms {
            for (j, &k) in p.iter().enumerate() {
                assert!(!sum.get(j, k));
                sum.set(j, k, true);
            }
        }
        assert_eq!(sum, missing);
    }
}

#[test]
fn completability_matches_exhaustive_search_at_order_three() {
    // all r x s Latin rectangles over 3 symbols with r, s <= 3
    for r in 1..=3 {
        for s in 1..=3 {
            for code in 0..3usize.pow((r * s) as u32) {
                let rows: Vec<Vec<usize>> = (0..r)
                    .map(|i| {
                        (0..s)
                            .map(|j| code / 3usize.pow((i * s + j) as u32) % 3)
                            .collect()
                    })
                    .collect();
                let Ok(rect) = LatinRectangle::new(3, &rows) else {
                    continue;
                };
                let partial: Vec<Vec<Option<usize>>> = rows
                    .iter()
                    .map(|row| row.iter().map(|&v| Some(v)).collect())
                    .collect();
                let c = completable_rs(&rect).unwrap();
                assert_eq!(
                    c.completable,
                    brute_completion_exists(3, &partial),
                    "{rows:?}"
                );
                if let Some(sq) = c.completion {
                    assert!((0..r).all(|i| (0..s).all(|j| sq.get(i, j) == rows[i][j])));
                }
            }
        }
    }
}

#[test]
fn birkhoff_reconstructs_random_doubly_stochastic() {
    let mut rng = rng(3);
    for n in 1..=6 {
        for _ in 0..20 {
            let a = random_doubly_stochastic(n, rng.random_range(1..=8), 12, &mut rng);
            let dec = birkhoff_decompose(&a).unwrap();
            assert_eq!(dec.reconstruct(n), a);
            assert!(dec.terms.len() <= birkhoff_term_bound(n));
        }
    }
}

#[test]
fn exhaustive_small_matrices_satisfy_konig() {
    for a in all_zero_one(3, 3).chain(all_zero_one(2, 4)) {
        assert_eq!(max_matching(&a).len(), brute_min_cover(&a));
    }
}
