//! Self-check suites run by `gc check`.

use std::fmt;

use anyhow::Result;
use clap::ValueEnum;
use gc_core::cohomology::{
    cohomology_dims, compare_with_registry, euler_characteristic, CohomologyTable,
    KnownValueRegistry,
};
use gc_core::complex::{enumerate_all, ComplexSpec, Variant, DEFAULT_GENERATOR_CAP};
use gc_core::graphs::Parity;
use gc_core::kneissler::{perp_block_rank, report_from, restricted_differential};
use gc_core::linalg::{
    berlekamp_massey, gauss_rank, wiedemann_rank, Field, FpSparseMatrix, PivotStrategy, PrimeField,
    RankMethod,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    D2,
    Tables,
    Kneissler,
    Linalg,
}

/// One named check with its outcome.
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn outcome(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

pub fn run(suite: Suite, seed: u64, report: &mut dyn FnMut(&Outcome)) -> Result<bool> {
    let mut all = true;
    let mut sink = |o: Outcome| {
        all &= o.pass;
        report(&o);
    };
    match suite {
        Suite::D2 => d2(&mut sink)?,
        Suite::Tables => tables(&mut sink)?,
        Suite::Kneissler => kneissler(&mut sink)?,
        Suite::Linalg => linalg(seed, &mut sink),
    }
    Ok(all)
}

fn specs(parity: Parity, loops: std::ops::RangeInclusive<usize>) -> Vec<ComplexSpec> {
    loops
        .flat_map(|g| {
            [Variant::Full, Variant::Triconnected]
                .map(|v| ComplexSpec::new(parity, v, g).expect("loop order at least 2"))
        })
        .collect()
}

fn d2(sink: &mut dyn FnMut(Outcome)) -> Result<()> {
    for spec in specs(Parity::Even, 3..=6)
        .into_iter()
        .chain(specs(Parity::Odd, 2..=6))
    {
        let slices = enumerate_all(spec, DEFAULT_GENERATOR_CAP)?;
        let ds = gc_core::cohomology::differentials(&slices)?;
        let mut pass = true;
        for pair in ds.windows(2) {
            pass &= pair[0].mul(&pair[1])?.is_zero();
        }
        sink(outcome(
            format!("d2 {spec}"),
            pass,
            format!("{} differentials", ds.len()),
        ));
    }
    Ok(())
}

/// Degrees with nonzero cohomology expected in the small tables.
fn expected_nonzero(parity: Parity, g: usize) -> Vec<(i64, usize)> {
    match (parity, g) {
        (Parity::Even, 3 | 5 | 7) => vec![(0, 1)],
        (Parity::Even, 6) => vec![(3, 1)],
        (Parity::Odd, 2..=4) => vec![(-3, 1)],
        (Parity::Odd, 5) => vec![(-3, 2)],
        (Parity::Odd, 6) => vec![(-6, 1), (-3, 2)],
        _ => vec![],
    }
}

fn tables(sink: &mut dyn FnMut(Outcome)) -> Result<()> {
    let registry = KnownValueRegistry::published();
    for (parity, loops) in [(Parity::Even, 3..=7), (Parity::Odd, 2..=6)] {
        for g in loops {
            let mut full: Option<CohomologyTable> = None;
            for variant in [Variant::Full, Variant::Triconnected] {
                let spec = ComplexSpec::new(parity, variant, g)?;
                let table = cohomology_dims(spec, PrimeField::default(), RankMethod::Gauss)?;
                if table.rows.iter().all(|r| r.dim == 0) {
                    sink(outcome(format!("tables {spec}"), true, "empty complex"));
                    continue;
                }
                let cmp = compare_with_registry(&table, &registry);
                let (chain, cohom) = euler_characteristic(&table);
                let nonzero = table.nonzero();
                let pass = cmp.all_match()
                    && table.is_certified()
                    && chain == cohom
                    && nonzero == expected_nonzero(parity, g);
                sink(outcome(
                    format!("tables {spec}"),
                    pass,
                    format!("h={nonzero:?} chi={chain}/{cohom}"),
                ));
                match (&full, variant) {
                    (None, Variant::Full) => full = Some(table),
                    (Some(f), Variant::Triconnected) => sink(outcome(
                        format!("quasi-iso {parity}-g{g}"),
                        f.nonzero() == nonzero,
                        "",
                    )),
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

/// `(g, dim B, dim B^perp, dim V, rank d, bound)` for even and odd parity.
const BOUND_ROWS: [(Parity, [usize; 6]); 8] = [
    (Parity::Even, [5, 0, 0, 1, 0, 0]),
    (Parity::Even, [6, 2, 2, 4, 3, 1]),
    (Parity::Even, [7, 2, 6, 19, 8, 0]),
    (Parity::Even, [8, 6, 39, 143, 45, 0]),
    (Parity::Odd, [5, 2, 1, 1, 1, 2]),
    (Parity::Odd, [6, 3, 3, 4, 4, 2]),
    (Parity::Odd, [7, 9, 13, 27, 19, 3]),
    (Parity::Odd, [8, 27, 65, 167, 88, 4]),
];

fn kneissler(sink: &mut dyn FnMut(Outcome)) -> Result<()> {
    let field = PrimeField::default();
    for (parity, row) in BOUND_ROWS {
        let g = row[0];
        let d = restricted_differential(g, parity)?;
        let r = report_from(&d, field, RankMethod::Gauss, 0)?;
        let got = [g, r.dim_b, r.dim_bperp, r.dim_v, r.rank_d, r.upper_bound];
        sink(outcome(
            format!("kneissler {parity}-g{g}"),
            got == row,
            format!("{got:?}"),
        ));
        let perp = perp_block_rank(&d, field);
        sink(outcome(
            format!("surjective {parity}-g{g}"),
            perp == r.dim_bperp,
            format!("rank {perp} of {}", r.dim_bperp),
        ));
    }
    Ok(())
}

fn random_sparse(f: PrimeField, rng: &mut ChaCha8Rng) -> FpSparseMatrix {
    let rows = rng.gen_range(1..=60);
    let cols = rng.gen_range(1..=60);
    let density = rng.gen_range(0.02..0.3);
    let mut triplets = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                triplets.push((r, c, rng.gen_range(1..f.p()) as i64));
            }
        }
    }
    FpSparseMatrix::from_triplets(f, rows, cols, triplets)
}

fn linalg(seed: u64, sink: &mut dyn FnMut(Outcome)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [3u64, 3323] {
        let f = PrimeField::new(p).expect("prime");
        let (mut bounded, mut equal, mut invariant) = (true, 0, true);
        let runs = 200;
        for i in 0..runs {
            let m = random_sparse(f, &mut rng);
            let g = gauss_rank(&m, &PivotStrategy::Markowitz).rank;
            let rows: Vec<usize> = (0..m.nrows()).rev().collect();
            let cols: Vec<usize> = (0..m.ncols()).collect();
            let g2 = gauss_rank(&m, &PivotStrategy::TwoPhase { rows, cols }).rank;
            let w = wiedemann_rank(&m, 1, seed.wrapping_add(i))
                .map(|r| r.rank)
                .unwrap_or(usize::MAX);
            bounded &= w <= g;
            equal += usize::from(w == g);
            invariant &= g == g2;
        }
        sink(outcome(format!("wiedemann<=gauss p={p}"), bounded, ""));
        sink(outcome(
            format!("wiedemann=gauss p={p}"),
            equal * 100 >= runs as usize * 95,
            format!("{equal}/{runs}"),
        ));
        sink(outcome(format!("pivot invariance p={p}"), invariant, ""));
    }

    let f = PrimeField::default();
    let mut recovered = true;
    for degree in 1..=50 {
        let coeffs: Vec<u64> = (0..degree).map(|_| f.random(&mut rng)).collect();
        let mut seq: Vec<u64> = (0..degree).map(|_| f.random(&mut rng)).collect();
        for i in degree..2 * degree + 10 {
            let next = (0..degree).fold(0, |acc, j| {
                f.add(acc, f.mul(coeffs[j], seq[i - degree + j]))
            });
            seq.push(next);
        }
        let mut planted: Vec<u64> = coeffs.iter().map(|&c| f.neg(c)).collect();
        planted.push(1);
        let ok = berlekamp_massey(&f, &seq) == planted;
        recovered &= ok;
    }
    sink(outcome(
        "berlekamp-massey planted recurrences",
        recovered,
        "degrees 1..50",
    ));
}
