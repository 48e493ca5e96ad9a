use rayon::prelude::*;

use super::field::{Field, PrimeField};
use crate::complex::IntSparseMatrix;

/// Row count above which matrix-vector products run in parallel.
const PARALLEL_ROWS: usize = 4096;

/// Sparse matrix over `F_p`, stored by rows with sorted column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSparseMatrix {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<(u32, u64)>>,
}

impl FpSparseMatrix {
    /// Builds a matrix from reduced or unreduced integer triplets; repeated
    /// positions are summed and zeros dropped.
    pub fn from_triplets<I>(field: PrimeField, nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "entry ({r}, {c}) out of range");
            rows[r].push((c as u32, field.reduce(v)));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, u64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 = field.add(last.1, v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        FpSparseMatrix { field, ncols, rows }
    }

    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        FpSparseMatrix {
            field,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        FpSparseMatrix {
            field,
            ncols: n,
            rows: (0..n).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[Vec<(u32, u64)>] {
        &self.rows
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(u32, u64)>> {
        self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                rows[c as usize].push((r as u32, v));
            }
        }
        FpSparseMatrix {
            field: self.field,
            ncols: self.rows.len(),
            rows,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut d = vec![vec![0; self.ncols]; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                d[r][c as usize] = v;
            }
        }
        d
    }

    /// `A x` over a field containing `F_p`.
    pub fn matvec<F: Field>(&self, f: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.ncols);
        let row_dot = |row: &Vec<(u32, u64)>| {
            row.iter().fold(f.zero(), |acc, &(c, v)| {
                f.add(acc, f.mul_base(x[c as usize], v))
            })
        };
        if self.rows.len() >= PARALLEL_ROWS {
            self.rows.par_iter().map(row_dot).collect()
        } else {
            self.rows.iter().map(row_dot).collect()
        }
    }

    /// `A^T y` over a field containing `F_p`.
    pub fn transpose_matvec<F: Field>(&self, f: &F, y: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(y.len(), self.rows.len());
        let mut out = vec![f.zero(); self.ncols];
        for (row, &yr) in self.rows.iter().zip(y) {
            if f.is_zero(yr) {
                continue;
            }
            for &(c, v) in row {
                let c = c as usize;
                out[c] = f.add(out[c], f.mul_base(yr, v));
            }
        }
        out
    }
}

/// Entrywise reduction of an integer matrix; entries divisible by `p` vanish.
pub fn reduce_mod_p(m: &IntSparseMatrix, field: PrimeField) -> FpSparseMatrix {
    FpSparseMatrix::from_triplets(field, m.nrows(), m.ncols(), m.entries().iter().copied())
}
