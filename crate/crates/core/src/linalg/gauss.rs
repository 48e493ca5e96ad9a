//! Sparse Gaussian elimination over `F_p`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{Field, PrimeField};
use super::sparse::FpSparseMatrix;
use super::{RankMethod, RankResult};

/// Rows inspected per Markowitz pivot search.
const MARKOWITZ_CANDIDATES: usize = 16;
/// Density of the active submatrix above which elimination goes dense.
const DENSE_THRESHOLD: f64 = 0.2;
/// Largest active submatrix, in entries, that may be densified.
const DENSE_MAX_ENTRIES: usize = 1 << 24;
/// Smallest active submatrix worth densifying.
const DENSE_MIN_ENTRIES: usize = 64;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Lightest rows first, pivot minimizing `(row len - 1)(col count - 1)`.
    #[default]
    Markowitz,
    /// Eliminate the given rows first, then the given columns, then continue
    /// with Markowitz pivoting.
    TwoPhase { rows: Vec<usize>, cols: Vec<usize> },
}

/// Exact rank of `m` over its field.
pub fn gauss_rank(m: &FpSparseMatrix, strategy: &PivotStrategy) -> RankResult {
    let field = m.field();
    let rank = Eliminator::new(m.clone()).run(strategy);
    RankResult {
        rank,
        method: RankMethod::Gauss,
        certified: true,
        prime: field.p(),
        seed: None,
    }
}

struct Eliminator {
    f: PrimeField,
    rows: Vec<Vec<(u32, u64)>>,
    active: Vec<bool>,
    col_count: Vec<u32>,
    col_rows: Vec<Vec<u32>>,
    heap: BinaryHeap<Reverse<(usize, u32)>>,
    active_rows: usize,
    active_cols: usize,
    active_nnz: usize,
    rank: usize,
}

impl Eliminator {
    fn new(m: FpSparseMatrix) -> Self {
        let f = m.field();
        let ncols = m.ncols();
        let rows = m.into_rows();
        let mut col_count = vec![0u32; ncols];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        let mut heap = BinaryHeap::new();
        let mut active = vec![false; rows.len()];
        let mut active_rows = 0;
        let mut active_nnz = 0;
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            active[r] = true;
            active_rows += 1;
            active_nnz += row.len();
            heap.push(Reverse((row.len(), r as u32)));
            for &(c, _) in row {
                col_count[c as usize] += 1;
                col_rows[c as usize].push(r as u32);
            }
        }
        let active_cols = col_count.iter().filter(|&&c| c > 0).count();
        Eliminator {
            f,
            rows,
            active,
            col_count,
            col_rows,
            heap,
            active_rows,
            active_cols,
            active_nnz,
            rank: 0,
        }
    }

    fn run(mut self, strategy: &PivotStrategy) -> usize {
        if let PivotStrategy::TwoPhase { rows, cols } = strategy {
            let mut pref_heap: BinaryHeap<Reverse<(usize, u32)>> = rows
                .iter()
                .filter(|&&r| r < self.rows.len() && self.active[r])
                .map(|&r| Reverse((self.rows[r].len(), r as u32)))
                .collect();
            while let Some(Reverse((len, r))) = pref_heap.pop() {
                let r = r as usize;
                if !self.active[r] {
                    continue;
                }
                if self.rows[r].len() != len {
                    pref_heap.push(Reverse((self.rows[r].len(), r as u32)));
                    continue;
                }
                let c = self.lightest_column(r);
                self.pivot(r, c);
            }
            let pref_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| c < self.col_count.len())
                .collect();
            loop {
                let best = pref_cols
                    .iter()
                    .copied()
                    .filter(|&c| self.col_count[c] > 0)
                    .min_by_key(|&c| (self.col_count[c], c));
                let Some(c) = best else { break };
                let r = self.col_rows[c]
                    .iter()
                    .map(|&r| r as usize)
                    .filter(|&r| self.active[r] && self.has(r, c))
                    .min_by_key(|&r| (self.rows[r].len(), r))
                    .expect("column count matches live rows");
                self.pivot(r, c);
            }
        }
        loop {
            if self.try_dense() {
                break;
            }
            let Some((r, c)) = self.markowitz_pivot() else {
                break;
            };
            self.pivot(r, c);
        }
        self.rank
    }

    fn has(&self, r: usize, c: usize) -> bool {
        self.rows[r]
            .binary_search_by_key(&(c as u32), |e| e.0)
            .is_ok()
    }

    fn lightest_column(&self, r: usize) -> usize {
        self.rows[r]
            .iter()
            .map(|e| e.0 as usize)
            .min_by_key(|&c| (self.col_count[c], c))
            .expect("active rows are nonempty")
    }

    fn markowitz_pivot(&mut self) -> Option<(usize, usize)> {
        let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(MARKOWITZ_CANDIDATES);
        while candidates.len() < MARKOWITZ_CANDIDATES {
            let Some(Reverse((len, r))) = self.heap.pop() else {
                break;
            };
            let r = r as usize;
            if !self.active[r] || self.rows[r].len() != len {
                continue;
            }
            candidates.push((len, r));
            if len == 1 {
                break;
            }
        }
        let mut best: Option<((usize, usize, usize), usize, usize)> = None;
        for &(len, r) in &candidates {
            let c = self.lightest_column(r);
            let score = ((len - 1) * (self.col_count[c] as usize - 1), len, r);
            if best.is_none_or(|b| score < b.0) {
                best = Some((score, r, c));
            }
        }
        let (_, r, c) = best?;
        for &(len, s) in &candidates {
            if s != r {
                self.heap.push(Reverse((len, s as u32)));
            }
        }
        Some((r, c))
    }

    fn dec_col(&mut self, c: usize) {
        self.col_count[c] -= 1;
        if self.col_count[c] == 0 {
            self.active_cols -= 1;
        }
    }

    fn inc_col(&mut self, c: usize) {
        if self.col_count[c] == 0 {
            self.active_cols += 1;
        }
        self.col_count[c] += 1;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let f = self.f;
        let prow = std::mem::take(&mut self.rows[r]);
        self.active[r] = false;
        self.active_rows -= 1;
        self.active_nnz -= prow.len();
        for &(j, _) in &prow {
            self.dec_col(j as usize);
        }
        self.rank += 1;
        let pval = prow[prow.binary_search_by_key(&(c as u32), |e| e.0).unwrap()].1;
        let pinv = f.inv(pval).expect("pivot is nonzero");
        let targets = std::mem::take(&mut self.col_rows[c]);
        let mut merged: Vec<(u32, u64)> = Vec::new();
        for s in targets {
            let s = s as usize;
            if !self.active[s] {
                continue;
            }
            let Ok(pos) = self.rows[s].binary_search_by_key(&(c as u32), |e| e.0) else {
                continue;
            };
            let factor = f.mul(self.rows[s][pos].1, pinv);
            let old = std::mem::take(&mut self.rows[s]);
            merged.clear();
            let (mut i, mut k) = (0, 0);
            while i < old.len() || k < prow.len() {
                let oc = old.get(i).map_or(u32::MAX, |e| e.0);
                let pc = prow.get(k).map_or(u32::MAX, |e| e.0);
                if oc < pc {
                    merged.push(old[i]);
                    i += 1;
                } else if pc < oc {
                    // fill-in
                    let v = f.neg(f.mul(factor, prow[k].1));
                    merged.push((pc, v));
                    self.inc_col(pc as usize);
                    self.col_rows[pc as usize].push(s as u32);
                    k += 1;
                } else {
                    let v = f.sub(old[i].1, f.mul(factor, prow[k].1));
                    if v == 0 {
                        self.dec_col(oc as usize);
                    } else {
                        merged.push((oc, v));
                    }
                    i += 1;
                    k += 1;
                }
            }
            self.active_nnz = self.active_nnz + merged.len() - old.len();
            self.rows[s] = merged.clone();
            if merged.is_empty() {
                self.active[s] = false;
                self.active_rows -= 1;
            } else {
                self.heap.push(Reverse((merged.len(), s as u32)));
            }
        }
    }

    /// Finishes with dense elimination if the active part is dense enough.
    fn try_dense(&mut self) -> bool {
        let size = self.active_rows * self.active_cols;
        if !(DENSE_MIN_ENTRIES..=DENSE_MAX_ENTRIES).contains(&size) {
            return false;
        }
        if (self.active_nnz as f64) < DENSE_THRESHOLD * size as f64 {
            return false;
        }
        let mut col_pos = vec![usize::MAX; self.col_count.len()];
        let mut k = 0;
        for (c, &n) in self.col_count.iter().enumerate() {
            if n > 0 {
                col_pos[c] = k;
                k += 1;
            }
        }
        let mut dense: Vec<Vec<u64>> = Vec::with_capacity(self.active_rows);
        for (r, row) in self.rows.iter().enumerate() {
            if !self.active[r] {
                continue;
            }
            let mut d = vec![0u64; k];
            for &(c, v) in row {
                d[col_pos[c as usize]] = v;
            }
            dense.push(d);
        }
        self.rank += dense_rank(self.f, dense);
        true
    }
}

/// Rank of a dense matrix over `F_p` by row reduction.
pub(crate) fn dense_rank(f: PrimeField, mut m: Vec<Vec<u64>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let t = f.mul(row[c], inv);
            for j in c..ncols {
                if prow[j] != 0 {
                    row[j] = f.sub(row[j], f.mul(t, prow[j]));
                }
            }
        }
        rank += 1;
    }
    rank
}
