//! Brute-force oracles shared by the integration tests.
#![allow(
    dead_code,
    clippy::type_complexity,
    clippy::too_many_arguments,
    clippy::needless_range_loop
)]

use gc_core::graphs::{Multigraph, Parity, Sign};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn perm_parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2
}

/// Relabeled sorted edge list and the orientation sign of the relabeling, or
/// `None` for even parity with parallel edges (sign undefined there).
pub fn relabel_with_sign(
    g: &Multigraph,
    perm: &[usize],
    parity: Parity,
) -> (Vec<(usize, usize)>, Option<Sign>) {
    let mapped: Vec<(usize, usize, bool)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u as usize], perm[v as usize]);
            (a.min(b), a.max(b), a > b)
        })
        .collect();
    let mut sorted: Vec<(usize, usize)> = mapped.iter().map(|e| (e.0, e.1)).collect();
    sorted.sort_unstable();
    let sign = match parity {
        Parity::Even => {
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                None
            } else {
                // position of each mapped edge in the sorted list
                let pos: Vec<usize> = mapped
                    .iter()
                    .map(|e| sorted.binary_search(&(e.0, e.1)).unwrap())
                    .collect();
                Some(parity_sign(perm_parity(&pos)))
            }
        }
        Parity::Odd => {
            let rev = mapped.iter().filter(|e| e.2).count();
            Some(parity_sign(perm_parity(perm) + rev))
        }
    };
    (sorted, sign)
}

fn parity_sign(k: usize) -> Sign {
    if k.is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Brute-force canonical form: minimal relabeled edge list over all vertex
/// permutations, zero-detection by scanning automorphisms, and the sign of a
/// relabeling reaching the minimum. `perms` must be all permutations of the
/// vertex set.
pub fn brute_canonical(
    g: &Multigraph,
    parity: Parity,
    perms: &[Vec<usize>],
) -> (Vec<(usize, usize)>, Option<Sign>) {
    let mut best: Option<(Vec<(usize, usize)>, Option<Sign>)> = None;
    let mut zero = false;
    let own: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    for p in perms {
        let (edges, sign) = relabel_with_sign(g, p, parity);
        if sign.is_none() {
            zero = true;
        }
        if edges == own && sign == Some(Sign::Minus) {
            zero = true;
        }
        if best.as_ref().is_none_or(|b| edges < b.0) {
            best = Some((edges, sign));
        }
    }
    let (edges, sign) = best.unwrap();
    (edges, if zero { None } else { sign })
}

/// All loop-free multigraphs on `n` vertices with `e` edges, as sorted edge
/// lists, optionally restricted to minimum degree at least `min_degree`.
pub fn all_multigraphs(n: usize, e: usize, min_degree: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut deg = vec![0usize; n];
    let mut chosen = Vec::with_capacity(e);
    fn rec(
        start: usize,
        remaining: usize,
        pairs: &[(usize, usize)],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        min_degree: usize,
        n: usize,
        out: &mut Vec<Multigraph>,
    ) {
        let deficit: usize = deg.iter().map(|&d| min_degree.saturating_sub(d)).sum();
        if deficit > 2 * remaining {
            return;
        }
        if remaining == 0 {
            out.push(Multigraph::new(n, chosen.iter().copied()).unwrap());
            return;
        }
        for i in start..pairs.len() {
            let (u, v) = pairs[i];
            // vertices below u can no longer gain degree
            if (0..u).any(|w| deg[w] < min_degree) {
                break;
            }
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(i, remaining - 1, pairs, deg, chosen, min_degree, n, out);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
    rec(0, e, &pairs, &mut deg, &mut chosen, min_degree, n, &mut out);
    out
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank over `F_p` by dense elimination.
pub fn dense_rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| -> u64 {
        let (mut r, mut b, mut e) = (1u128, a as u128, (p - 2) as u128);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        r as u64
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let f = inv(m[rank][c]);
        for r in rank + 1..nrows {
            if m[r][c] == 0 {
                continue;
            }
            let t = (m[r][c] as u128 * f as u128 % p as u128) as u64;
            for j in c..ncols {
                let sub = (t as u128 * m[rank][j] as u128 % p as u128) as u64;
                m[r][j] = (m[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
