mod common;

use common::{all_zero_one, permutations};
use ryserlab::latin::LatinSquare;
use ryserlab::matrix::ZeroOneMatrix;
use ryserlab::mols::{plane_from_system, OrthogonalSystem};
use ryserlab::problems::{
    problem1_analyze, problem2_analyze, DesignParams, Premise, Problem1Outcome, Problem2Outcome,
};

fn brute_columns_meet(a: &ZeroOneMatrix) -> bool {
    (0..a.cols()).all(|x| (0..a.cols()).all(|y| (0..a.rows()).any(|i| a.get(i, x) && a.get(i, y))))
}

/// Some 3x3 submatrix equals J minus a permutation matrix.
fn brute_has_forbidden(a: &ZeroOneMatrix) -> bool {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let cols: Vec<usize> = (0..a.cols()).collect();
    let triples = |v: &[usize]| -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                for z in y + 1..v.len() {
                    out.push([v[x], v[y], v[z]]);
                }
            }
        }
        out
    };
    let perms = permutations(3);
    triples(&rows).iter().any(|r| {
        triples(&cols).iter().any(|c| {
            perms
                .iter()
                .any(|p| (0..3).all(|x| (0..3).all(|y| a.get(r[x], c[y]) == (p[x] != y))))
        })
    })
}

#[test]
fn problem1_exhaustive_up_to_four_by_four() {
    let mut with_hypotheses = 0;
    for m in 1..=4 {
        for n in 1..=4 {
            for a in all_zero_one(m, n) {
                let outcome = problem1_analyze(&a).unwrap();
                let meet = brute_columns_meet(&a);
                let forbidden = brute_has_forbidden(&a);
                match outcome {
                    Problem1Outcome::AllOnesRow(i) => {
                        assert!(meet && !forbidden);
                        assert_eq!(a.row_sum(i), n);
                        with_hypotheses += 1;
                    }
                    Problem1Outcome::DisjointColumns { a: x, b: y } => {
                        assert!(!meet);
                        assert!((0..m).all(|i| !(a.get(i, x) && a.get(i, y))));
                    }
                    Problem1Outcome::ForbiddenSubmatrix { rows, cols } => {
                        assert!(meet && forbidden);
                        let sub = a.submatrix(&rows, &cols);
                        assert!(sub
                            .row_sums()
                            .iter()
                            .chain(sub.col_sums().iter())
                            .all(|&s| s == 2));
                    }
                }
            }
        }
    }
    assert!(with_hypotheses > 0);
}

#[test]
fn problem1_order_four_complement_of_identity() {
    let a = ZeroOneMatrix::from_fn(4, 4, |i, j| i != j);
    assert!(matches!(
        problem1_analyze(&a).unwrap(),
        Problem1Outcome::ForbiddenSubmatrix { .. }
    ));
}

fn fano_incidence() -> ZeroOneMatrix {
    let sys = OrthogonalSystem::new(2, vec![LatinSquare::cyclic(2)]).unwrap();
    plane_from_system(&sys).unwrap().matrix().clone()
}

#[test]
fn symmetric_fano_has_trace_three() {
    let a = fano_incidence();
    let symmetric = permutations(7)
        .into_iter()
        .map(|p| ZeroOneMatrix::from_fn(7, 7, |i, j| a.get(p[i], j)))
        .find(ZeroOneMatrix::is_symmetric)
        .expect("some row order of the Fano incidence is symmetric");
    let outcome = problem2_analyze(&symmetric, DesignParams::new(7, 3, 1)).unwrap();
    assert_eq!(
        outcome,
        Problem2Outcome::Verified {
            trace: 3,
            row_sums_k: true
        }
    );
    assert_eq!((0..7).filter(|&i| symmetric.get(i, i)).count(), 3);
}

#[test]
fn problem2_trivial_premise_failures() {
    let id = ZeroOneMatrix::identity(4);
    assert_eq!(
        problem2_analyze(&id, DesignParams::new(4, 1, 1)).unwrap(),
        Problem2Outcome::PremiseFailure(Premise::ParameterRange)
    );
    let not_sym = ZeroOneMatrix::from_fn(3, 3, |i, j| j == (i + 1) % 3 || i == 0);
    assert_eq!(
        problem2_analyze(&not_sym, DesignParams::new(3, 2, 1)).unwrap(),
        Problem2Outcome::PremiseFailure(Premise::NotSymmetric)
    );
}

#[test]
fn problem2_premises_exhaustive_on_symmetric_matrices() {
    let mut verified = 0;
    for n in 1..=5 {
        let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for code in 0u32..1 << upper.len() {
            let mut a = ZeroOneMatrix::zeros(n, n);
            for (b, &(i, j)) in upper.iter().enumerate() {
                if code >> b & 1 == 1 {
                    a.set(i, j, true);
                    a.set(j, i, true);
                }
            }
            let gram: Vec<Vec<usize>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| (0..n).filter(|&l| a.get(x, l) && a.get(y, l)).count())
                        .collect()
                })
                .collect();
            for k in 0..=n {
                for lambda in 0..=n {
                    let in_range = 0 < lambda && lambda < k && k + 1 < n;
                    let square = in_range && (0..=k).any(|s| s * s == k - lambda);
                    let design = (0..n)
                        .all(|x| (0..n).all(|y| gram[x][y] == if x == y { k } else { lambda }));
                    let outcome = problem2_analyze(&a, DesignParams::new(n, k, lambda)).unwrap();
                    let expect_ok = in_range && !square && design;
                    match outcome {
                        Problem2Outcome::Verified { trace, row_sums_k } => {
                            assert!(expect_ok);
                            assert_eq!(trace, (0..n).filter(|&i| a.get(i, i)).count());
                            assert_eq!(trace, k);
                            assert!(row_sums_k);
                            verified += 1;
                        }
                        Problem2Outcome::PremiseFailure(p) => {
                            assert!(!expect_ok);
                            match p {
                                Premise::ParameterRange => assert!(!in_range),
                                Premise::SquareDifference(d) => assert!(square && d == k - lambda),
                                Premise::GramEntry {
                                    row, col, found, ..
                                } => {
                                    assert!(!design && gram[row][col] == found)
                                }
                                other => panic!("unexpected premise {other:?}"),
                            }
                        }
                    }
                }
            }
        }
    }
    // k(k-1) = λ(v-1) has no solution in range for v <= 5
    assert_eq!(verified, 0);
}
