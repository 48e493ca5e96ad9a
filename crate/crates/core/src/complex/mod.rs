//! Generator bases and edge-contraction differentials.
//!
//! A slice of the complex is indexed by its vertex count `V`; with `g` loops it
//! has `E = V + g - 1` edges and cohomological degree `V - g - 1` (even parity)
//! or `V - 2g - 1` (odd parity) in the dual complex.

mod basis;
mod contract;
mod generate;
mod matrix;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{GraphError, Parity};

pub use basis::{enumerate_all, enumerate_basis, enumerate_basis_with_cap, BasisSlice};
pub use contract::{contract_edge, differential_matrix};
pub use generate::DEFAULT_GENERATOR_CAP;
pub use matrix::IntSparseMatrix;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("degree {k} is outside the nonempty range for {parity} parity with {loops} loops")]
    OutOfRange {
        parity: Parity,
        loops: usize,
        k: i64,
    },
    #[error("invalid vertex count {vertices} for {loops} loops")]
    InvalidVertexCount { loops: usize, vertices: usize },
    #[error("loop order must be at least 2, got {0}")]
    InvalidLoops(usize),
    #[error("edge index {index} out of range for a graph with {edges} edges")]
    EdgeIndex { index: usize, edges: usize },
    #[error("slices are not adjacent: {0}")]
    SliceMismatch(String),
    #[error("contraction image {0} is not in the target basis")]
    MissingImage(String),
    #[error("{count} graphs at {vertices} vertices exceed the generator cap {cap}")]
    GeneratorCap {
        count: usize,
        vertices: usize,
        cap: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    #[serde(rename = "tri")]
    Triconnected,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Triconnected => "tri",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Variant::Full),
            "tri" | "triconnected" => Ok(Variant::Triconnected),
            other => Err(ComplexError::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub parity: Parity,
    pub variant: Variant,
    pub loops: usize,
}

impl ComplexSpec {
    pub fn new(parity: Parity, variant: Variant, loops: usize) -> Result<Self, ComplexError> {
        if loops < 2 {
            return Err(ComplexError::InvalidLoops(loops));
        }
        Ok(ComplexSpec {
            parity,
            variant,
            loops,
        })
    }

    /// Vertex counts of possibly nonempty slices: at least two vertices (no
    /// tadpoles) and at most `2g - 2` (trivalent).
    pub fn vertex_range(&self) -> RangeInclusive<usize> {
        2..=2 * self.loops - 2
    }

    pub fn num_edges(&self, vertices: usize) -> usize {
        vertices + self.loops - 1
    }

    pub fn degree(&self, vertices: usize) -> i64 {
        degree(self.parity, self.loops, vertices)
    }

    pub fn vertex_count(&self, k: i64) -> Result<usize, ComplexError> {
        vertex_count(self.parity, self.loops, k)
    }

    /// Degrees of possibly nonempty slices, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.vertex_range().map(|v| self.degree(v)).collect();
        ks.sort_unstable();
        ks
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-g{}", self.parity, self.variant, self.loops)
    }
}

pub fn degree(parity: Parity, loops: usize, vertices: usize) -> i64 {
    let (v, g) = (vertices as i64, loops as i64);
    match parity {
        Parity::Even => v - g - 1,
        Parity::Odd => v - 2 * g - 1,
    }
}

/// Vertex count of the slice in degree `k`, or `OutOfRange` when that slice
/// is necessarily empty.
pub fn vertex_count(parity: Parity, loops: usize, k: i64) -> Result<usize, ComplexError> {
    if loops < 2 {
        return Err(ComplexError::InvalidLoops(loops));
    }
    let g = loops as i64;
    let v = match parity {
        Parity::Even => k + g + 1,
        Parity::Odd => k + 2 * g + 1,
    };
    if v < 2 || v > 2 * g - 2 {
        return Err(ComplexError::OutOfRange { parity, loops, k });
    }
    Ok(v as usize)
}
