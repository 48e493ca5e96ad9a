//! Exact and randomized rank computations over prime fields.

mod block;
mod field;
mod gauss;
mod sparse;
mod wiedemann;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use field::{
    is_prime, CubicExtension, ExtensionField, Field, PrimeField, DEFAULT_PRIME,
    MAX_EXTENSION_DEGREE,
};
pub use gauss::{gauss_rank, PivotStrategy};
pub use sparse::{reduce_mod_p, FpSparseMatrix};
pub use wiedemann::{
    berlekamp_massey, block_wiedemann_trial, extension_degree, precondition, wiedemann_rank,
    wiedemann_trial, BerlekampMassey, Preconditioned, WIEDEMANN_TRIALS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not an odd prime below 2^61")]
    InvalidPrime(u64),
    #[error("block size must be at least 1, got {0}")]
    InvalidBlock(usize),
    #[error("unknown rank method {0:?}, expected gauss or wiedemann")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Gauss,
    Wiedemann,
}

impl RankMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMethod::Gauss => "gauss",
            RankMethod::Wiedemann => "wiedemann",
        }
    }
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RankMethod {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gauss" => Ok(RankMethod::Gauss),
            "wiedemann" => Ok(RankMethod::Wiedemann),
            other => Err(LinalgError::UnknownMethod(other.to_string())),
        }
    }
}

/// A rank over `F_p`. Gauss ranks are exact; Wiedemann ranks are lower
/// bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub certified: bool,
    pub prime: u64,
    pub seed: Option<u64>,
}

impl fmt::Display for RankResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank={} method={} prime={} seed=",
            self.rank, self.method, self.prime
        )?;
        match self.seed {
            Some(s) => write!(f, "{s}")?,
            None => f.write_str("none")?,
        }
        write!(f, " certified={}", self.certified)
    }
}

/// Rank of `m` with the given method. `seed` and `block` only matter for
/// Wiedemann.
pub fn rank(
    m: &FpSparseMatrix,
    method: RankMethod,
    strategy: &PivotStrategy,
    block: usize,
    seed: u64,
) -> Result<RankResult, LinalgError> {
    match method {
        RankMethod::Gauss => Ok(gauss_rank(m, strategy)),
        RankMethod::Wiedemann => wiedemann_rank(m, block, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_line_format() {
        let r = RankResult {
            rank: 3,
            method: RankMethod::Wiedemann,
            certified: false,
            prime: 3323,
            seed: Some(7),
        };
        assert_eq!(
            r.to_string(),
            "rank=3 method=wiedemann prime=3323 seed=7 certified=false"
        );
        let g = RankResult {
            seed: None,
            method: RankMethod::Gauss,
            certified: true,
            ..r
        };
        assert_eq!(
            g.to_string(),
            "rank=3 method=gauss prime=3323 seed=none certified=true"
        );
    }
}
