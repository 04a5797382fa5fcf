mod common;

use cellwork::linalg::{
    invariant_factors, invariant_factors_i64, kernel_basis, smith_normal_form, smith_normal_form_big, solve,
    IntMatrix,
};
use common::{big, invariant_factors_by_minors, to_rows};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(r, c, &data)
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

fn check_snf(m: &IntMatrix) {
    let r = smith_normal_form(m);
    assert!(is_unit(&r.u.determinant()), "u not unimodular for {m:?}");
    assert!(is_unit(&r.v.determinant()), "v not unimodular for {m:?}");
    assert!(r.u.mul(&r.u_inv).is_identity());
    assert!(r.v.mul(&r.v_inv).is_identity());
    assert_eq!(r.u.mul(m).mul(&r.v), r.s);
    for i in 0..r.s.rows() {
        for j in 0..r.s.cols() {
            if i != j {
                assert!(r.s.get(i, j).is_zero());
            }
        }
    }
    let d = r.diagonal();
    for w in d.windows(2) {
        assert!(!w[0].is_negative() && !w[1].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zero before nonzero in {d:?}");
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "{d:?} is not a divisibility chain");
        }
    }
    let oracle: Vec<BigInt> = invariant_factors_by_minors(&to_rows(m)).into_iter().map(BigInt::from).collect();
    assert_eq!(d, oracle, "diagonal disagrees with determinantal divisors for {m:?}");
    assert_eq!(invariant_factors(m), oracle);
}

#[test]
fn seeded_matrices_match_the_minor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        check_snf(&random_matrix(&mut rng, 5, 9));
    }
}

#[test]
fn i64_and_bigint_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let m = random_matrix(&mut rng, 5, 20);
        let data: Vec<i64> = m.entries().iter().map(|x| i64::try_from(x).unwrap()).collect();
        let fast = invariant_factors_i64(&data, m.rows(), m.cols()).expect("small entries");
        let slow = smith_normal_form_big(&m).diagonal();
        assert_eq!(fast.into_iter().map(BigInt::from).collect::<Vec<_>>(), slow);
    }
}

#[test]
fn large_entries_fall_back_to_bigint() {
    let x: BigInt = BigInt::from(i64::MAX) * 3;
    let m = IntMatrix::from_rows(2, &[vec![x.clone(), big(0)], vec![big(0), x.clone() * 2]]).unwrap();
    assert_eq!(invariant_factors(&m), vec![x.clone(), x * 2]);
}

/// Every integer vector with entries in `[-b, b]` of length `n`.
fn box_vectors(n: usize, b: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<BigInt>| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(big(x));
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn kernel_basis_spans_small_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let m = random_matrix(&mut rng, 3, 3);
        let k = kernel_basis(&m);
        let r = smith_normal_form(&m).rank();
        assert_eq!(k.cols(), m.cols() - r);
        assert!(m.mul(&k).is_zero());
        for x in box_vectors(m.cols(), 4) {
            if m.mul_vec(&x).unwrap().iter().all(Zero::is_zero) {
                assert!(solve(&k, &x).unwrap().is_some(), "{x:?} in ker {m:?} but not in the basis span");
            }
        }
    }
}

#[test]
fn solve_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let m = random_matrix(&mut rng, 4, 5);
        let x: Vec<BigInt> = (0..m.cols()).map(|_| big(rng.gen_range(-3..=3))).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        assert_eq!(m.mul_vec(&y).unwrap(), b);
        let mut off = b.clone();
        off[0] += 1;
        if let Some(z) = solve(&m, &off).unwrap() {
            assert_eq!(m.mul_vec(&z).unwrap(), off);
        }
    }
    let m = IntMatrix::from_i64(1, 1, &[2]);
    assert_eq!(solve(&m, &[big(3)]).unwrap(), None);
    assert!(solve(&m, &[big(3), big(1)]).is_err());
}

#[test]
fn worked_examples() {
    let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
    assert_eq!(smith_normal_form(&m).diagonal(), vec![big(2), big(4)]);
    let k = kernel_basis(&IntMatrix::from_i64(1, 2, &[1, 1]));
    assert_eq!(k.cols(), 1);
    let col = k.column(0);
    assert!(col == vec![big(1), big(-1)] || col == vec![big(-1), big(1)]);
    let m = IntMatrix::from_i64(1, 2, &[1, 2]);
    let x = solve(&m, &[big(5)]).unwrap().unwrap();
    assert_eq!(&x[0] + big(2) * &x[1], big(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_invariants(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-7..=7)).collect();
        check_snf(&IntMatrix::from_i64(rows, cols, &data));
    }

    #[test]
    fn transpose_has_the_same_factors(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-7..=7)).collect();
        let m = IntMatrix::from_i64(rows, cols, &data);
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&m.transpose()));
    }
}
