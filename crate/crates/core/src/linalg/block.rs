use super::field::Field;

/// Rank of the block Hankel matrix `(S_{i+j})` built from the largest square
/// block layout that fits in `seq`.
pub(crate) fn block_hankel_rank<F: Field>(f: &F, seq: &[Vec<Vec<F::Elem>>]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    let n = seq[0].len();
    let m = seq.len().div_ceil(2);
    let size = n * m;
    let mut h: Vec<Vec<F::Elem>> = vec![vec![f.zero(); size]; size];
    for bi in 0..m {
        for bj in 0..m {
            let s = &seq[bi + bj];
            for i in 0..n {
                for j in 0..n {
                    h[bi * n + i][bj * n + j] = s[i][j];
                }
            }
        }
    }
    dense_rank(f, h)
}

/// Rank of a dense matrix over any field.
pub(crate) fn dense_rank<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !f.is_zero(m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).expect("pivot is nonzero");
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if f.is_zero(row[c]) {
                continue;
            }
            let t = f.mul(row[c], inv);
            for j in c..ncols {
                row[j] = f.sub(row[j], f.mul(t, prow[j]));
            }
        }
        rank += 1;
    }
    rank
}
