//! Randomized rank lower bounds from minimal polynomials.
//!
//! For `A` of size `r x c` the operator `B = D1 A^T D2 A D1` is square of
//! size `c`, with random invertible diagonals `D1`, `D2`. If the minimal
//! polynomial of `B` is `x^e h(x)` with `h(0) != 0`, then
//! `deg h + max(e - 1, 0) <= rank B <= rank A`. A projected sequence
//! `u^T B^k v` has a generating polynomial dividing the minimal polynomial, so
//! its degree, minus one when it is divisible by `x`, is a lower bound on the
//! rank of `A` for every choice of randomness.
//!
//! Over small prime fields the diagonal entries and projections are drawn
//! from an extension with at least `2^32` elements, which makes coincidences
//! among eigenvalues unlikely without changing the rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::block::block_hankel_rank;
use super::field::{CubicExtension, ExtensionField, Field, PrimeField};
use super::sparse::FpSparseMatrix;
use super::{LinalgError, RankMethod, RankResult};

/// Random elements are drawn from an extension of at least this size.
const EXTENSION_BOUND: u128 = 1 << 32;
/// Independent trials per rank estimate; the maximum is reported.
pub const WIEDEMANN_TRIALS: u64 = 3;
/// Terms beyond `2 * min(rows, cols) / N` in the sequence.
const EXTRA_TERMS: usize = 16;
/// Terms without a length change required before stopping early.
const STABLE_TERMS: usize = 8;

/// The operator `D1 A^T D2 A D1`, applied through matrix-vector products.
pub struct Preconditioned<'a, F: Field> {
    field: F,
    a: &'a FpSparseMatrix,
    d1: Vec<F::Elem>,
    d2: Vec<F::Elem>,
}

impl<'a, F: Field> Preconditioned<'a, F> {
    /// Random nonzero diagonals drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(field: F, a: &'a FpSparseMatrix, rng: &mut R) -> Self {
        let d1 = (0..a.ncols()).map(|_| field.random_nonzero(rng)).collect();
        let d2 = (0..a.nrows()).map(|_| field.random_nonzero(rng)).collect();
        Preconditioned { field, a, d1, d2 }
    }

    /// Explicit diagonals.
    pub fn with_diagonals(
        field: F,
        a: &'a FpSparseMatrix,
        d1: Vec<F::Elem>,
        d2: Vec<F::Elem>,
    ) -> Self {
        assert_eq!(d1.len(), a.ncols());
        assert_eq!(d2.len(), a.nrows());
        Preconditioned { field, a, d1, d2 }
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let scaled: Vec<F::Elem> = x.iter().zip(&self.d1).map(|(&a, &b)| f.mul(a, b)).collect();
        let mut y = self.a.matvec(f, &scaled);
        for (v, &d) in y.iter_mut().zip(&self.d2) {
            *v = f.mul(*v, d);
        }
        let mut z = self.a.transpose_matvec(f, &y);
        for (v, &d) in z.iter_mut().zip(&self.d1) {
            *v = f.mul(*v, d);
        }
        z
    }
}

/// The preconditioned operator over the base field, with diagonals drawn
/// from `seed`.
pub fn precondition(m: &FpSparseMatrix, seed: u64) -> Preconditioned<'_, PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Preconditioned::random(m.field(), m, &mut rng)
}

/// Minimal polynomial of a linearly recurrent sequence, monic, coefficients
/// from low to high degree.
pub fn berlekamp_massey<F: Field>(f: &F, seq: &[F::Elem]) -> Vec<F::Elem> {
    let mut bm = BerlekampMassey::new(f.clone());
    for &s in seq {
        bm.push(s);
    }
    bm.polynomial()
}

/// Incremental Berlekamp-Massey over a field.
pub struct BerlekampMassey<F: Field> {
    f: F,
    seq: Vec<F::Elem>,
    /// Connection polynomial `1 + c_1 x + ... `.
    c: Vec<F::Elem>,
    b: Vec<F::Elem>,
    len: usize,
    shift: usize,
    last_disc: F::Elem,
    last_change: usize,
}

impl<F: Field> BerlekampMassey<F> {
    pub fn new(f: F) -> Self {
        let one = f.one();
        BerlekampMassey {
            seq: Vec::new(),
            c: vec![one],
            b: vec![one],
            len: 0,
            shift: 1,
            last_disc: one,
            last_change: 0,
            f,
        }
    }

    /// Current recurrence length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn terms(&self) -> usize {
        self.seq.len()
    }

    /// Terms since the recurrence length last changed.
    pub fn stable_for(&self) -> usize {
        self.seq.len() - self.last_change
    }

    pub fn push(&mut self, s: F::Elem) {
        let f = &self.f;
        self.seq.push(s);
        let n = self.seq.len() - 1;
        let mut d = s;
        for i in 1..self.c.len().min(self.len + 1) {
            d = f.add(d, f.mul(self.c[i], self.seq[n - i]));
        }
        if f.is_zero(d) {
            self.shift += 1;
            return;
        }
        let coef = f.mul(
            d,
            f.inv(self.last_disc)
                .expect("stored discrepancy is nonzero"),
        );
        let needed = self.b.len() + self.shift;
        let old_c = if 2 * self.len <= n {
            Some(self.c.clone())
        } else {
            None
        };
        if self.c.len() < needed {
            self.c.resize(needed, f.zero());
        }
        for (i, &bi) in self.b.iter().enumerate() {
            let j = i + self.shift;
            self.c[j] = f.sub(self.c[j], f.mul(coef, bi));
        }
        match old_c {
            Some(old) => {
                self.len = n + 1 - self.len;
                self.b = old;
                self.last_disc = d;
                self.shift = 1;
                self.last_change = self.seq.len();
            }
            None => self.shift += 1,
        }
    }

    /// Generating polynomial `x^L C(1/x)`.
    pub fn polynomial(&self) -> Vec<F::Elem> {
        let f = &self.f;
        (0..=self.len)
            .map(|i| {
                let k = self.len - i;
                self.c.get(k).copied().unwrap_or(f.zero())
            })
            .collect()
    }
}

/// Smallest degree in `1, 3, 6, 12, 24` whose extension of `F_p` reaches
/// [`EXTENSION_BOUND`] elements.
pub fn extension_degree(p: u64) -> u32 {
    [1, 3, 6, 12]
        .into_iter()
        .find(|&d| (p as u128).pow(d) >= EXTENSION_BOUND)
        .unwrap_or(24)
}

/// One rank lower bound for `m` from a single random choice.
pub fn wiedemann_trial(m: &FpSparseMatrix, seed: u64) -> usize {
    if m.nnz() == 0 {
        return 0;
    }
    let base = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match extension_degree(base.p()) {
        1 => trial_over(base, m, &mut rng),
        3 => trial_over(CubicExtension::new(base), m, &mut rng),
        6 => trial_over(ExtensionField::<6>::new(base), m, &mut rng),
        12 => trial_over(ExtensionField::<12>::new(base), m, &mut rng),
        _ => trial_over(ExtensionField::<24>::new(base), m, &mut rng),
    }
}

fn trial_over<F: Field>(field: F, m: &FpSparseMatrix, rng: &mut ChaCha8Rng) -> usize {
    let op = Preconditioned::random(field.clone(), m, rng);
    let f = &field;
    let n = op.dim();
    let u: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
    let mut v: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
    let limit = 2 * m.nrows().min(m.ncols()) + EXTRA_TERMS;
    let mut bm = BerlekampMassey::new(field.clone());
    for _ in 0..limit {
        let s = u
            .iter()
            .zip(&v)
            .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        bm.push(s);
        if bm.terms() >= 2 * bm.len() + STABLE_TERMS && bm.stable_for() >= STABLE_TERMS {
            break;
        }
        v = op.apply(&v);
    }
    let poly = bm.polynomial();
    let degree = poly.len() - 1;
    if degree > 0 && f.is_zero(poly[0]) {
        degree - 1
    } else {
        degree
    }
}

fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Probabilistic lower bound on the rank: the maximum over
/// [`WIEDEMANN_TRIALS`] trials with seeds derived from `seed`. `block` is the
/// number of projection vectors; `1` is the scalar algorithm.
pub fn wiedemann_rank(
    m: &FpSparseMatrix,
    block: usize,
    seed: u64,
) -> Result<RankResult, LinalgError> {
    if block == 0 {
        return Err(LinalgError::InvalidBlock(block));
    }
    let rank = (0..WIEDEMANN_TRIALS)
        .map(|t| {
            let s = trial_seed(seed, t);
            if block == 1 {
                wiedemann_trial(m, s)
            } else {
                block_wiedemann_trial(m, block, s)
            }
        })
        .max()
        .unwrap_or(0);
    Ok(RankResult {
        rank,
        method: RankMethod::Wiedemann,
        certified: false,
        prime: m.field().p(),
        seed: Some(seed),
    })
}

/// One block trial with `block` projection vectors on each side.
///
/// The estimate is the rank of the block Hankel matrix of
/// `U^T B^(k+1) V`, which is at most the dimension of a Krylov space inside
/// the image of `B`.
pub fn block_wiedemann_trial(m: &FpSparseMatrix, block: usize, seed: u64) -> usize {
    if m.nnz() == 0 {
        return 0;
    }
    let base = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match extension_degree(base.p()) {
        1 => block_trial_over(base, m, block, &mut rng),
        3 => block_trial_over(CubicExtension::new(base), m, block, &mut rng),
        6 => block_trial_over(ExtensionField::<6>::new(base), m, block, &mut rng),
        12 => block_trial_over(ExtensionField::<12>::new(base), m, block, &mut rng),
        _ => block_trial_over(ExtensionField::<24>::new(base), m, block, &mut rng),
    }
}

fn block_trial_over<F: Field>(
    field: F,
    m: &FpSparseMatrix,
    block: usize,
    rng: &mut ChaCha8Rng,
) -> usize {
    let op = Preconditioned::random(field.clone(), m, rng);
    let f = &field;
    let n = op.dim();
    let us: Vec<Vec<F::Elem>> = (0..block)
        .map(|_| (0..n).map(|_| f.random(rng)).collect())
        .collect();
    // start from B V so that every Krylov vector lies in the image of B
    let mut vs: Vec<Vec<F::Elem>> = (0..block)
        .map(|_| {
            let v: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
            op.apply(&v)
        })
        .collect();
    let terms = 2 * m.nrows().min(m.ncols()) / block + EXTRA_TERMS;
    let mut seq: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(terms);
    for _ in 0..terms {
        let s: Vec<Vec<F::Elem>> = us
            .iter()
            .map(|u| {
                vs.iter()
                    .map(|v| {
                        u.iter()
                            .zip(v)
                            .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                    })
                    .collect()
            })
            .collect();
        seq.push(s);
        for v in vs.iter_mut() {
            *v = op.apply(v);
        }
    }
    block_hankel_rank(f, &seq)
}
