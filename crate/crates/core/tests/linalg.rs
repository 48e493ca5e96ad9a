mod common;

use gc_core::complex::IntSparseMatrix;
use gc_core::linalg::{
    berlekamp_massey, block_wiedemann_trial, extension_degree, gauss_rank, is_prime, rank,
    reduce_mod_p, wiedemann_rank, CubicExtension, ExtensionField, Field, FpSparseMatrix,
    PivotStrategy, PrimeField, RankMethod,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dense(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![6 => Just(0i64), 1 => -3i64..=3], c),
            r,
        )
    })
}

/// `r x c` product of random `r x k` and `k x c` factors: rank at most `k`.
fn low_rank(rows: usize, cols: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    use rand::Rng;
    let a: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    let b: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn fp(rows: &[Vec<i64>], p: u64) -> FpSparseMatrix {
    reduce_mod_p(
        &IntSparseMatrix::from_dense(rows),
        PrimeField::new(p).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gauss_matches_dense_oracle(m in dense(25), p in prop::sample::select(vec![3u64, 5, 7, 3323, 32003])) {
        let r = gauss_rank(&fp(&m, p), &PivotStrategy::Markowitz).rank;
        prop_assert_eq!(r, common::dense_rank_mod(&m, p));
        prop_assert!(r <= common::rational_rank(&m));
    }

    #[test]
    fn wiedemann_never_exceeds_gauss(m in dense(25), seed in any::<u64>(), p in prop::sample::select(vec![3u64, 3323])) {
        let a = fp(&m, p);
        let g = gauss_rank(&a, &PivotStrategy::Markowitz).rank;
        prop_assert!(wiedemann_rank(&a, 1, seed).unwrap().rank <= g);
        prop_assert!(block_wiedemann_trial(&a, 3, seed) <= g);
    }

    #[test]
    fn pivot_strategy_does_not_change_rank(m in dense(25), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let a = fp(&m, 3323);
        let g = gauss_rank(&a, &PivotStrategy::Markowitz).rank;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..a.nrows()).collect();
        let mut cols: Vec<usize> = (0..a.ncols()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        prop_assert_eq!(gauss_rank(&a, &PivotStrategy::TwoPhase { rows: rows.clone(), cols: vec![] }).rank, g);
        prop_assert_eq!(gauss_rank(&a, &PivotStrategy::TwoPhase { rows: vec![], cols }).rank, g);
    }

    #[test]
    fn transpose_preserves_rank(m in dense(20)) {
        let a = fp(&m, 3323);
        prop_assert_eq!(gauss_rank(&a, &PivotStrategy::Markowitz).rank, gauss_rank(&a.transpose(), &PivotStrategy::Markowitz).rank);
    }

    #[test]
    fn sms_round_trip(m in dense(15)) {
        let a = IntSparseMatrix::from_dense(&m);
        let mut buf = Vec::new();
        a.write_sms(&mut buf).unwrap();
        prop_assert_eq!(IntSparseMatrix::read_sms(buf.as_slice()).unwrap(), a);
    }
}

#[test]
fn wiedemann_is_exact_on_planted_low_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (rows, cols, k) in [(40, 30, 7), (120, 90, 45), (90, 110, 70), (60, 80, 60)] {
        let m = low_rank(rows, cols, k, &mut rng);
        let expected = common::rational_rank(&m);
        let primes: &[u64] = if rows > 100 {
            &[3323, 1_000_000_007]
        } else {
            &[3, 3323, 1_000_000_007]
        };
        for &p in primes {
            let a = fp(&m, p);
            let g = gauss_rank(&a, &PivotStrategy::Markowitz).rank;
            assert!(g <= expected);
            assert_eq!(g, common::dense_rank_mod(&m, p));
            assert_eq!(
                wiedemann_rank(&a, 1, 5).unwrap().rank,
                g,
                "{rows}x{cols} rank {k} p={p}"
            );
            assert_eq!(
                block_wiedemann_trial(&a, 4, 5),
                g,
                "block {rows}x{cols} p={p}"
            );
        }
    }
}

#[test]
fn rank_dispatch_reports_method_and_seed() {
    let a = fp(&[vec![1, 2], vec![2, 4]], 3323);
    let g = rank(&a, RankMethod::Gauss, &PivotStrategy::Markowitz, 1, 9).unwrap();
    assert_eq!((g.rank, g.certified, g.seed), (1, true, None));
    let w = rank(&a, RankMethod::Wiedemann, &PivotStrategy::Markowitz, 1, 9).unwrap();
    assert_eq!((w.rank, w.certified, w.seed), (1, false, Some(9)));
    assert!(wiedemann_rank(&a, 0, 1).is_err());
}

fn planted<F: Field>(f: &F, degree: usize, rng: &mut ChaCha8Rng) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let coeffs: Vec<F::Elem> = (0..degree).map(|_| f.random(rng)).collect();
    let mut seq: Vec<F::Elem> = (0..degree).map(|_| f.random(rng)).collect();
    for i in degree..2 * degree {
        let next = (0..degree).fold(f.zero(), |acc, j| {
            f.add(acc, f.mul(coeffs[j], seq[i - degree + j]))
        });
        seq.push(next);
    }
    let mut poly: Vec<F::Elem> = coeffs.iter().map(|&c| f.neg(c)).collect();
    poly.push(f.one());
    (seq, poly)
}

#[test]
fn berlekamp_massey_recovers_planted_recurrences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [3323u64, 65521, 1_000_000_007] {
        let f = PrimeField::new(p).unwrap();
        for degree in 1..=50 {
            let (seq, poly) = planted(&f, degree, &mut rng);
            assert_eq!(berlekamp_massey(&f, &seq), poly, "p={p} degree={degree}");
        }
    }
    let cubic = CubicExtension::new(PrimeField::new(3).unwrap());
    let wide = ExtensionField::<24>::new(PrimeField::new(3).unwrap());
    for degree in 1..=50 {
        let (seq, poly) = planted(&cubic, degree, &mut rng);
        assert_eq!(
            berlekamp_massey(&cubic, &seq),
            poly,
            "cubic extension degree={degree}"
        );
        let (seq, poly) = planted(&wide, degree, &mut rng);
        assert_eq!(
            berlekamp_massey(&wide, &seq),
            poly,
            "degree 24 extension degree={degree}"
        );
    }
}

#[test]
fn berlekamp_massey_on_degenerate_sequences() {
    let f = PrimeField::new(3323).unwrap();
    assert_eq!(berlekamp_massey(&f, &[0, 0, 0, 0]), vec![1]);
    // geometric sequence 2^k
    let seq: Vec<u64> = (0..10).map(|k| f.pow(2, k)).collect();
    assert_eq!(berlekamp_massey(&f, &seq), vec![f.neg(2), 1]);
}

#[test]
fn cubic_extension_is_a_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [3u64, 5, 3323] {
        let f = CubicExtension::new(PrimeField::new(p).unwrap());
        for _ in 0..200 {
            let a = f.random_nonzero(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
    }
}

#[test]
fn extension_degree_reaches_two_to_the_32() {
    for p in [3u64, 5, 7, 101, 1021, 1627, 3323, 65521, 4294967311] {
        let d = extension_degree(p);
        assert!((p as u128).pow(d) >= 1 << 32, "p={p} d={d}");
    }
    assert_eq!(extension_degree(3), 24);
    assert_eq!(extension_degree(3323), 3);
    assert_eq!(extension_degree(4294967311), 1);
}

#[test]
fn primality() {
    let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
    assert_eq!(
        small,
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    );
    assert!(is_prime(3323) && is_prime(1_000_000_007) && !is_prime(3323 * 3329));
    assert!(PrimeField::new(3324).is_err());
}
