use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use super::ComplexError;

/// Sparse integer matrix with entries sorted by `(row, col)`, no zeros and no
/// repeated positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSparseMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntSparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntSparseMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    /// Sums repeated positions and drops zeros.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(ComplexError::Parse(format!(
                    "entry ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(IntSparseMatrix {
            nrows,
            ncols,
            entries,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable();
        IntSparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// Columns `cols` in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.ncols];
        for (j, &c) in cols.iter().enumerate() {
            pos[c] = j;
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter(|e| pos[e.1] != usize::MAX)
            .map(|&(r, c, v)| (r, pos[c], v))
            .collect();
        entries.sort_unstable();
        IntSparseMatrix {
            nrows: self.nrows,
            ncols: cols.len(),
            entries,
        }
    }

    /// Rows `rows` in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        self.transpose().select_columns(rows).transpose()
    }

    /// The product `self * rhs`.
    pub fn mul(&self, rhs: &IntSparseMatrix) -> Result<Self, ComplexError> {
        if self.ncols != rhs.nrows {
            return Err(ComplexError::SliceMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut rhs_rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rhs.nrows];
        for &(r, c, v) in &rhs.entries {
            rhs_rows[r].push((c, v));
        }
        let mut out = Vec::new();
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let mut i = 0;
        while i < self.entries.len() {
            let row = self.entries[i].0;
            acc.clear();
            while i < self.entries.len() && self.entries[i].0 == row {
                let (_, k, a) = self.entries[i];
                for &(c, b) in &rhs_rows[k] {
                    *acc.entry(c).or_insert(0) += a * b;
                }
                i += 1;
            }
            out.extend(acc.iter().filter(|e| *e.1 != 0).map(|(&c, &v)| (row, c, v)));
        }
        Ok(IntSparseMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            entries: out,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .map(move |(c, &v)| (r, c, v))
            })
            .collect();
        IntSparseMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    /// Writes the matrix in SMS format.
    pub fn write_sms<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {} M", self.nrows, self.ncols)?;
        for &(r, c, v) in &self.entries {
            writeln!(w, "{} {} {}", r + 1, c + 1, v)?;
        }
        writeln!(w, "0 0 0")?;
        w.flush()
    }

    /// Reads an SMS matrix. The third header token is not interpreted.
    pub fn read_sms<R: BufRead>(r: R) -> Result<Self, ComplexError> {
        let mut lines = r.lines();
        let header = loop {
            match lines.next() {
                None => return Err(ComplexError::Parse("empty SMS input".into())),
                Some(line) => {
                    let line = line?;
                    if !line.trim().is_empty() {
                        break line;
                    }
                }
            }
        };
        let mut tok = header.split_whitespace();
        let (nrows, ncols) = match (tok.next(), tok.next(), tok.next()) {
            (Some(a), Some(b), Some(_)) => (parse_num(a)?, parse_num(b)?),
            _ => return Err(ComplexError::Parse(format!("bad SMS header {header:?}"))),
        };
        let mut triplets = Vec::new();
        let mut terminated = false;
        for line in lines {
            let line = line?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.is_empty() {
                continue;
            }
            if parts.len() != 3 {
                return Err(ComplexError::Parse(format!("bad SMS entry {line:?}")));
            }
            let (i, j) = (parse_num(parts[0])?, parse_num(parts[1])?);
            let v: i64 = parts[2]
                .parse()
                .map_err(|_| ComplexError::Parse(format!("bad SMS value {line:?}")))?;
            if i == 0 && j == 0 && v == 0 {
                terminated = true;
                break;
            }
            if i == 0 || j == 0 {
                return Err(ComplexError::Parse(format!(
                    "SMS indices are 1-based: {line:?}"
                )));
            }
            triplets.push((i - 1, j - 1, v));
        }
        if !terminated {
            return Err(ComplexError::Parse("missing SMS terminator".into()));
        }
        Self::from_triplets(nrows, ncols, triplets)
    }
}

fn parse_num(s: &str) -> Result<usize, ComplexError> {
    s.parse()
        .map_err(|_| ComplexError::Parse(format!("bad integer {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_duplicates_and_drops_zeros() {
        let m = IntSparseMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 0, 2), (1, 0, 3)])
            .unwrap();
        assert_eq!(m.entries(), &[(1, 0, 5)]);
        assert!(IntSparseMatrix::from_triplets(1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn product_matches_dense() {
        let a = IntSparseMatrix::from_dense(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = IntSparseMatrix::from_dense(&[vec![1, 0], vec![0, 1], vec![2, -1]]);
        assert_eq!(a.mul(&b).unwrap().to_dense(), vec![vec![1, 2], vec![6, -4]]);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn sms_round_trip() {
        let m = IntSparseMatrix::from_dense(&[vec![0, -1, 0], vec![4, 0, 1]]);
        let mut buf = Vec::new();
        m.write_sms(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "2 3 M\n1 2 -1\n2 1 4\n2 3 1\n0 0 0\n"
        );
        assert_eq!(IntSparseMatrix::read_sms(&buf[..]).unwrap(), m);
    }

    #[test]
    fn sms_rejects_malformed() {
        assert!(IntSparseMatrix::read_sms(&b"2 2 M\n1 1 1\n"[..]).is_err());
        assert!(IntSparseMatrix::read_sms(&b"2 2 M\n3 1 1\n0 0 0\n"[..]).is_err());
        assert!(IntSparseMatrix::read_sms(&b"2 x M\n0 0 0\n"[..]).is_err());
        let z = IntSparseMatrix::read_sms(&b"3 3 M\n0 0 0\n"[..]).unwrap();
        assert!(z.is_zero());
        assert_eq!((z.nrows(), z.ncols()), (3, 3));
    }

    #[test]
    fn row_and_column_selection() {
        let m = IntSparseMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(
            m.select_columns(&[2, 0]).to_dense(),
            vec![vec![3, 1], vec![6, 4]]
        );
        assert_eq!(m.select_rows(&[1]).to_dense(), vec![vec![4, 5, 6]]);
    }
}
