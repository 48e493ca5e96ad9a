mod common;

use gc_core::cohomology::{
    cohomology_dims, cohomology_with, compare_with_registry, differentials, euler_characteristic,
    table_from_ranks, CohomologyOptions, CohomologyTable, DifferentialRank, KnownValueRegistry,
};
use gc_core::complex::{enumerate_all, ComplexSpec, Variant, DEFAULT_GENERATOR_CAP};
use gc_core::graphs::Parity;
use gc_core::linalg::{PrimeField, RankMethod};

const SMALL: [(Parity, usize); 8] = [
    (Parity::Even, 3),
    (Parity::Even, 4),
    (Parity::Even, 5),
    (Parity::Even, 6),
    (Parity::Odd, 2),
    (Parity::Odd, 3),
    (Parity::Odd, 4),
    (Parity::Odd, 5),
];

fn spec(parity: Parity, variant: Variant, g: usize) -> ComplexSpec {
    ComplexSpec::new(parity, variant, g).unwrap()
}

fn gauss(s: ComplexSpec, p: u64) -> CohomologyTable {
    cohomology_dims(s, PrimeField::new(p).unwrap(), RankMethod::Gauss).unwrap()
}

#[test]
fn small_tables_match_registry() {
    let registry = KnownValueRegistry::published();
    for (parity, g) in SMALL {
        for variant in [Variant::Full, Variant::Triconnected] {
            let t = gauss(spec(parity, variant, g), 3323);
            if (parity, variant, g) == (Parity::Odd, Variant::Triconnected, 2) {
                // the theta graph has parallel edges, so this complex is empty
                assert!(t.rows.iter().all(|r| r.dim == 0));
                continue;
            }
            let cmp = compare_with_registry(&t, &registry);
            assert!(
                cmp.all_match(),
                "{}: {:?}",
                t.spec,
                cmp.mismatches().collect::<Vec<_>>()
            );
            assert!(t.is_certified());
            let (chain, cohom) = euler_characteristic(&t);
            assert_eq!(chain, cohom, "{}", t.spec);
        }
    }
}

#[test]
fn ranks_match_rational_oracle() {
    for (parity, g) in SMALL {
        let s = spec(parity, Variant::Full, g);
        let slices = enumerate_all(s, DEFAULT_GENERATOR_CAP).unwrap();
        let ranks: Vec<DifferentialRank> = differentials(&slices)
            .unwrap()
            .iter()
            .map(|m| DifferentialRank {
                rank: common::rational_rank(&m.to_dense()),
                certified: true,
            })
            .collect();
        let oracle = table_from_ranks(s, &slices, &ranks, &CohomologyOptions::default()).unwrap();
        let t = gauss(s, 3323);
        for (a, b) in oracle.rows.iter().zip(&t.rows) {
            assert_eq!(
                (a.k, a.dim, a.rank_in, a.rank_out, a.h),
                (b.k, b.dim, b.rank_in, b.rank_out, b.h),
                "{s}"
            );
        }
    }
}

#[test]
fn tables_do_not_depend_on_the_prime() {
    for (parity, g) in [(Parity::Even, 6), (Parity::Odd, 5), (Parity::Odd, 6)] {
        let s = spec(parity, Variant::Full, g);
        let base = gauss(s, 3323).nonzero();
        for p in [10007, 32003, 1_000_000_007] {
            assert_eq!(gauss(s, p).nonzero(), base, "{s} p={p}");
        }
    }
}

#[test]
fn full_and_triconnected_agree() {
    for (parity, g) in [(Parity::Even, 6), (Parity::Odd, 5), (Parity::Odd, 6)] {
        let full = gauss(spec(parity, Variant::Full, g), 3323);
        let tri = gauss(spec(parity, Variant::Triconnected, g), 3323);
        assert_eq!(full.nonzero(), tri.nonzero(), "{parity}-g{g}");
        for (f, t) in full.rows.iter().zip(&tri.rows) {
            assert!(t.dim <= f.dim);
        }
    }
}

#[test]
fn wiedemann_tables_match_but_are_not_certified() {
    let s = spec(Parity::Odd, Variant::Full, 6);
    let exact = gauss(s, 3323);
    let mut opts = CohomologyOptions::new(PrimeField::default(), RankMethod::Wiedemann);
    opts.seed = 4;
    let w = cohomology_with(s, &opts).unwrap();
    assert_eq!(w.nonzero(), exact.nonzero());
    assert_eq!(w.seed, Some(4));
    for r in &w.rows {
        assert_eq!(r.certified, r.h == 0, "k={}", r.k);
    }
    assert!(w.to_text().contains("<=2"));
}

#[test]
fn without_a_check_prime_nonzero_entries_are_bounds() {
    let s = spec(Parity::Even, Variant::Full, 6);
    let opts = CohomologyOptions {
        check_prime: None,
        ..Default::default()
    };
    let t = cohomology_with(s, &opts).unwrap();
    assert_eq!(t.nonzero(), vec![(3, 1)]);
    assert!(!t.row(3).unwrap().certified);
    let line = t
        .to_text()
        .lines()
        .find(|l| l.trim_start().starts_with("3 "))
        .unwrap()
        .to_owned();
    assert!(line.ends_with("<=1"), "{line}");
}
