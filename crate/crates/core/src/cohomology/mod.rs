//! Cohomology dimensions from slice dimensions and differential ranks.
//!
//! Degree `k` of `GC_n` at `V` vertices is dual to the slice of the same
//! vertex count; the cohomological differential (vertex splitting) is the
//! transpose of edge contraction. For the slice at `V` vertices,
//!
//! * `rank_in` is the rank of contraction from `V` to `V - 1` vertices,
//! * `rank_out` is the rank of contraction from `V + 1` to `V` vertices,
//!
//! and `h = dim - rank_in - rank_out`.

mod registry;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    differential_matrix, enumerate_all, BasisSlice, ComplexError, ComplexSpec, IntSparseMatrix,
    DEFAULT_GENERATOR_CAP,
};
use crate::linalg::{
    gauss_rank, reduce_mod_p, wiedemann_rank, LinalgError, PivotStrategy, PrimeField, RankMethod,
};

pub use registry::{
    compare_with_registry, vanishes, ComparisonRow, ComparisonStatus, EntryFlag, KnownTable,
    KnownValueRegistry, RegistryComparison, RegistryEntry,
};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("expected {expected} differentials for {slices} slices, got {got}")]
    DifferentialCount {
        slices: usize,
        expected: usize,
        got: usize,
    },
    #[error("ranks {rank_in} + {rank_out} exceed the dimension {dim} in degree {k}")]
    RankExceedsDimension {
        k: i64,
        dim: usize,
        rank_in: usize,
        rank_out: usize,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub k: i64,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub h: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub spec: ComplexSpec,
    pub prime: u64,
    pub method: RankMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// One row per degree, ascending.
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    pub fn row(&self, k: i64) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// `h` in degree `k`, zero outside the table.
    pub fn h(&self, k: i64) -> usize {
        self.row(k).map_or(0, |r| r.h)
    }

    /// Degrees with nonzero cohomology.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.rows
            .iter()
            .filter(|r| r.h != 0)
            .map(|r| (r.k, r.h))
            .collect()
    }

    pub fn is_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }

    /// Aligned text with columns `k, dim, rank, h`, where `rank` is the rank
    /// of contraction out of degree `k`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = ["k", "dim", "rank", "h"];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                let h = if r.certified {
                    r.h.to_string()
                } else {
                    format!("<={}", r.h)
                };
                [r.k.to_string(), r.dim.to_string(), r.rank_in.to_string(), h]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        writeln!(
            f,
            "# {} prime={} method={}",
            self.spec, self.prime, self.method
        )?;
        writeln!(
            f,
            "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}",
            header[0],
            header[1],
            header[2],
            header[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3]
        )?;
        for row in &cells {
            writeln!(
                f,
                "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}",
                row[0],
                row[1],
                row[2],
                row[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3]
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyOptions {
    pub prime: PrimeField,
    pub method: RankMethod,
    pub seed: u64,
    /// Gauss ranks are recomputed over this field; agreement certifies them.
    pub check_prime: Option<PrimeField>,
    pub generator_cap: usize,
}

impl CohomologyOptions {
    pub fn new(prime: PrimeField, method: RankMethod) -> Self {
        let check = if prime.p() == 10007 { 32003 } else { 10007 };
        CohomologyOptions {
            prime,
            method,
            seed: 0,
            check_prime: Some(PrimeField::new(check).expect("prime")),
            generator_cap: DEFAULT_GENERATOR_CAP,
        }
    }
}

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions::new(PrimeField::default(), RankMethod::Gauss)
    }
}

/// Enumerates every slice of `spec`, builds the differentials and fills the
/// table, cross-checking Gauss ranks at a second prime.
pub fn cohomology_dims(
    spec: ComplexSpec,
    prime: PrimeField,
    method: RankMethod,
) -> Result<CohomologyTable, CohomologyError> {
    cohomology_with(spec, &CohomologyOptions::new(prime, method))
}

pub fn cohomology_with(
    spec: ComplexSpec,
    options: &CohomologyOptions,
) -> Result<CohomologyTable, CohomologyError> {
    let slices = enumerate_all(spec, options.generator_cap)?;
    let differentials = differentials(&slices)?;
    table_from_differentials(spec, &slices, &differentials, options)
}

/// Contraction matrices between consecutive slices: entry `i` maps
/// `slices[i + 1]` to `slices[i]`.
pub fn differentials(slices: &[BasisSlice]) -> Result<Vec<IntSparseMatrix>, CohomologyError> {
    slices
        .windows(2)
        .map(|w| differential_matrix(&w[1], &w[0]).map_err(CohomologyError::from))
        .collect()
}

/// Rank of one differential; `certified` marks ranks known to be exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRank {
    pub rank: usize,
    pub certified: bool,
}

impl DifferentialRank {
    const ZERO: DifferentialRank = DifferentialRank {
        rank: 0,
        certified: true,
    };
}

pub fn differential_rank(
    m: &IntSparseMatrix,
    options: &CohomologyOptions,
) -> Result<DifferentialRank, CohomologyError> {
    if m.is_zero() {
        return Ok(DifferentialRank::ZERO);
    }
    match options.method {
        RankMethod::Gauss => {
            let rank = gauss_rank(&reduce_mod_p(m, options.prime), &PivotStrategy::Markowitz).rank;
            let certified = match options.check_prime {
                Some(q) => gauss_rank(&reduce_mod_p(m, q), &PivotStrategy::Markowitz).rank == rank,
                None => false,
            };
            Ok(DifferentialRank { rank, certified })
        }
        RankMethod::Wiedemann => {
            let r = wiedemann_rank(&reduce_mod_p(m, options.prime), 1, options.seed)?;
            Ok(DifferentialRank {
                rank: r.rank,
                certified: false,
            })
        }
    }
}

/// Fills the table from slices sorted by vertex count and the contraction
/// matrices between them, as returned by [`differentials`].
pub fn table_from_differentials(
    spec: ComplexSpec,
    slices: &[BasisSlice],
    differentials: &[IntSparseMatrix],
    options: &CohomologyOptions,
) -> Result<CohomologyTable, CohomologyError> {
    let expected = slices.len().saturating_sub(1);
    if differentials.len() != expected {
        return Err(CohomologyError::DifferentialCount {
            slices: slices.len(),
            expected,
            got: differentials.len(),
        });
    }
    let ranks: Vec<DifferentialRank> = differentials
        .par_iter()
        .map(|m| differential_rank(m, options))
        .collect::<Result<_, _>>()?;
    table_from_ranks(spec, slices, &ranks, options)
}

/// Fills the table from slices sorted by vertex count and the ranks of the
/// differentials between them.
pub fn table_from_ranks(
    spec: ComplexSpec,
    slices: &[BasisSlice],
    ranks: &[DifferentialRank],
    options: &CohomologyOptions,
) -> Result<CohomologyTable, CohomologyError> {
    let expected = slices.len().saturating_sub(1);
    if ranks.len() != expected {
        return Err(CohomologyError::DifferentialCount {
            slices: slices.len(),
            expected,
            got: ranks.len(),
        });
    }
    let exact = DifferentialRank::ZERO;
    let mut rows = Vec::with_capacity(slices.len());
    for (i, slice) in slices.iter().enumerate() {
        let rank_in = if i == 0 { &exact } else { &ranks[i - 1] };
        let rank_out = ranks.get(i).unwrap_or(&exact);
        let k = slice.degree();
        let dim = slice.len();
        let h = dim.checked_sub(rank_in.rank + rank_out.rank).ok_or(
            CohomologyError::RankExceedsDimension {
                k,
                dim,
                rank_in: rank_in.rank,
                rank_out: rank_out.rank,
            },
        )?;
        rows.push(CohomologyRow {
            k,
            dim,
            rank_in: rank_in.rank,
            rank_out: rank_out.rank,
            h,
            certified: h == 0 || (rank_in.certified && rank_out.certified),
        });
    }
    rows.sort_by_key(|r| r.k);
    Ok(CohomologyTable {
        spec,
        prime: options.prime.p(),
        method: options.method,
        seed: (options.method == RankMethod::Wiedemann).then_some(options.seed),
        rows,
    })
}

/// Alternating sums `(sum (-1)^k dim, sum (-1)^k h)`.
pub fn euler_characteristic(table: &CohomologyTable) -> (i64, i64) {
    table.rows.iter().fold((0, 0), |(chain, cohom), r| {
        let s = if r.k.rem_euclid(2) == 0 { 1 } else { -1 };
        (chain + s * r.dim as i64, cohom + s * r.h as i64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Variant;
    use crate::graphs::Parity;

    fn table(parity: Parity, g: usize) -> CohomologyTable {
        let spec = ComplexSpec::new(parity, Variant::Full, g).unwrap();
        cohomology_dims(spec, PrimeField::default(), RankMethod::Gauss).unwrap()
    }

    #[test]
    fn tetrahedron_class() {
        let t = table(Parity::Even, 3);
        assert_eq!(t.nonzero(), vec![(0, 1)]);
        assert!(t.is_certified());
        assert_eq!(euler_characteristic(&t), (1, 1));
    }

    #[test]
    fn odd_theta() {
        let t = table(Parity::Odd, 2);
        assert_eq!(t.nonzero(), vec![(-3, 1)]);
    }

    #[test]
    fn text_and_json_layout() {
        let t = table(Parity::Odd, 3);
        let text = t.to_text();
        let header = text.lines().nth(1).unwrap();
        assert_eq!(
            header.split_whitespace().collect::<Vec<_>>(),
            ["k", "dim", "rank", "h"]
        );
        let json = serde_json::to_value(&t).unwrap();
        for key in ["spec", "prime", "method", "rows"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json.get("seed").is_none());
        let row = &json["rows"][0];
        for key in ["k", "dim", "rank_in", "rank_out", "h", "certified"] {
            assert!(row.get(key).is_some(), "{key}");
        }
        let back: CohomologyTable = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn differential_count_is_checked() {
        let spec = ComplexSpec::new(Parity::Even, Variant::Full, 3).unwrap();
        let slices = enumerate_all(spec, DEFAULT_GENERATOR_CAP).unwrap();
        let err = table_from_differentials(spec, &slices, &[], &CohomologyOptions::default());
        assert!(matches!(
            err,
            Err(CohomologyError::DifferentialCount { .. })
        ));
    }
}
