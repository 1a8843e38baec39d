use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use rankcodes_core::bounds::{asymptotic_rate, bound_report, AsymptoticPoint, NoExact};
use rankcodes_core::counting::{gaussian_binomial, mrd_rank_distribution, n_rank, pow_big, JrKey, JrMemo};
use rankcodes_core::gf::FieldSpec;
use rankcodes_core::linalg::{
    injection_distance, rank_distance, rank_distance_bounds, subspace_distance, MatrixGF, Subspace,
};

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = MatrixGF> {
    proptest::collection::vec(0..p as u8, rows * cols).prop_map(move |d| MatrixGF::new(p, rows, cols, d).unwrap())
}

fn field_and_elements() -> impl Strategy<Value = (FieldSpec, Vec<u64>)> {
    prop_oneof![Just((2u32, 4usize)), Just((3, 2)), Just((5, 2)), Just((2, 5)), Just((7, 1))].prop_flat_map(|(p, m)| {
        let f = FieldSpec::default_for(p, m).unwrap();
        let order = f.order().unwrap();
        (Just(f), proptest::collection::vec(0..order, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((f, xs) in field_and_elements()) {
        let (a, b, c) = (f.from_index(xs[0]), f.from_index(xs[1]), f.from_index(xs[2]));
        let ab_c = f.mul(&f.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = f.mul(&a, &f.add(&b, &c).unwrap()).unwrap();
        let right = f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()).unwrap(), f.one());
        }
        // Frobenius is additive
        let lhs = f.frobenius_pow(&f.add(&a, &b).unwrap(), 1, 1).unwrap();
        let rhs = f.add(&f.frobenius_pow(&a, 1, 1).unwrap(), &f.frobenius_pow(&b, 1, 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.index_of(&a), xs[0]);
    }

    #[test]
    fn rank_is_transpose_invariant_and_subadditive(x in matrix(3, 3, 4), y in matrix(3, 3, 4)) {
        prop_assert_eq!(x.rank(), x.transpose().rank());
        prop_assert!(x.add(&y).unwrap().rank() <= x.rank() + y.rank());
    }

    #[test]
    fn rank_factorization_reconstructs(x in matrix(2, 4, 5)) {
        let (g, h) = x.rank_factorization();
        prop_assert_eq!(g.rows(), x.rank());
        prop_assert_eq!(g.transpose().matmul(&h).unwrap(), x);
    }

    #[test]
    fn rank_distance_is_a_metric(x in matrix(2, 4, 4), y in matrix(2, 4, 4), z in matrix(2, 4, 4)) {
        let (xy, yz, xz) = (rank_distance(&x, &y).unwrap(), rank_distance(&y, &z).unwrap(), rank_distance(&x, &z).unwrap());
        prop_assert!(xz <= xy + yz);
        prop_assert_eq!(xy, rank_distance(&y, &x).unwrap());
        prop_assert_eq!(rank_distance(&x, &x).unwrap(), 0);
    }

    #[test]
    fn rank_distance_sandwich(x in matrix(3, 3, 3), y in matrix(3, 3, 3)) {
        let (lo, hi) = rank_distance_bounds(&x, &y).unwrap();
        let d = rank_distance(&x, &y).unwrap();
        prop_assert!(lo <= d && d <= hi);
    }

    #[test]
    fn subspace_metrics(a in matrix(2, 3, 5), b in matrix(2, 3, 5)) {
        let (u, v) = (Subspace::from_generators(&a), Subspace::from_generators(&b));
        let ds = subspace_distance(&u, &v).unwrap();
        let di = injection_distance(&u, &v).unwrap();
        // dS = 2 dI - |dim U - dim V|
        prop_assert_eq!(ds + u.dim().abs_diff(v.dim()), 2 * di);
        prop_assert_eq!(Subspace::from_rref(u.basis().clone()).unwrap(), u);
    }

    #[test]
    fn asymptotic_bounds_are_ordered(nu in 1u32..=40, rho in 0u32..=40, delta in 0u32..=40) {
        let r = |k: u32| BigRational::new(k.into(), 40.into());
        if let Ok(pt) = AsymptoticPoint::new(r(nu), r(rho), r(delta)) {
            let b = asymptotic_rate(&pt);
            prop_assert!(b.lower <= b.upper);
            prop_assert!(b.lower >= BigRational::zero());
        }
    }
}

#[test]
fn gaussian_binomial_identities() {
    for q in [2u64, 3, 4, 5] {
        for n in 0..=9 {
            for r in 0..=n {
                assert_eq!(gaussian_binomial(n, r, q), gaussian_binomial(n, n - r, q));
                if r >= 1 && n >= 1 {
                    // q-Pascal rule
                    let rhs = gaussian_binomial(n - 1, r - 1, q) + pow_big(q, r) * gaussian_binomial(n - 1, r, q);
                    assert_eq!(gaussian_binomial(n, r, q), rhs, "q={q} n={n} r={r}");
                }
            }
        }
    }
}

#[test]
fn rank_counts_partition_the_space() {
    for q in [2u64, 3, 5] {
        for m in 1..=5 {
            for n in 1..=m {
                let total: BigUint = (0..=n).map(|r| n_rank(q, m, n, r)).sum();
                assert_eq!(total, pow_big(q, m * n));
            }
        }
    }
}

#[test]
fn mrd_distribution_sums_to_code_size() {
    for q in [2u64, 3] {
        for m in 1..=5 {
            for n in 1..=m {
                for d in 1..=n {
                    let total: BigUint = (d..=n).map(|r| mrd_rank_distribution(q, m, n, d, r).unwrap()).sum::<BigUint>() + 1u32;
                    assert_eq!(total, pow_big(q, m * (n - d + 1)), "q={q} m={m} n={n} d={d}");
                }
            }
        }
    }
}

#[test]
fn sphere_intersections_are_symmetric_and_partition_spheres() {
    let mut memo = JrMemo::default();
    for (q, m, n) in [(2u64, 3usize, 3usize), (2, 4, 3), (3, 2, 2), (2, 2, 4)] {
        let k = m.min(n);
        for d in 0..=k {
            for r in 0..=k {
                let mut total = BigUint::zero();
                for s in 0..=k {
                    let v = memo.get(JrKey::new(q, m, n, r, s, d)).unwrap();
                    assert_eq!(v, memo.get(JrKey::new(q, m, n, s, r, d)).unwrap());
                    total += v;
                }
                // every matrix at distance r from the center is counted once
                assert_eq!(total, n_rank(q, m, n, r), "q={q} m={m} n={n} d={d} r={r}");
            }
        }
    }
}

#[test]
fn sphere_intersection_matches_direct_count() {
    // independent check: enumerate GF(3)^(2x2) directly around diag(1, 0)
    let p = 3u32;
    let center = MatrixGF::from_rows(p, &[&[1, 0], &[0, 0]]).unwrap();
    let mut counts = [[0u32; 3]; 3];
    for code in 0..81u32 {
        let data: Vec<u8> = (0..4).map(|i| (code / 3u32.pow(i) % 3) as u8).collect();
        let x = MatrixGF::new(p, 2, 2, data).unwrap();
        counts[rank_distance(&x, &center).unwrap()][x.rank()] += 1;
    }
    let mut memo = JrMemo::default();
    for (r, row) in counts.iter().enumerate() {
        for (s, &c) in row.iter().enumerate() {
            assert_eq!(memo.get(JrKey::new(3, 2, 2, r, s, 1)).unwrap(), BigUint::from(c));
        }
    }
}

#[test]
fn bound_reports_are_consistent_for_q3() {
    let mut memo = JrMemo::default();
    for m in 1..=3 {
        for n in 1..=m {
            for r in 1..=n {
                for d in 1..=n + 1 {
                    let rep = bound_report(3, m, n, r, d, &mut NoExact, &mut memo).unwrap();
                    assert!(rep.violations().is_empty(), "q=3 m={m} n={n} r={r} d={d}");
                    assert!(rep.best_lower() >= BigUint::one());
                }
            }
        }
    }
}
