use std::fmt::Debug;

use rand::{Rng, SeedableRng};

use super::LinalgError;

/// The prime used when none is given.
pub const DEFAULT_PRIME: u64 = 3323;

/// Arithmetic in a finite field whose prime subfield is `F_p`.
pub trait Field: Clone + Send + Sync {
    type Elem: Copy + Eq + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: Self::Elem) -> bool;
    /// Image of a reduced element of `F_p`.
    fn embed(&self, x: u64) -> Self::Elem;
    /// Product with a reduced element of `F_p`.
    fn mul_base(&self, a: Self::Elem, s: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(x) {
                return x;
            }
        }
    }
}

/// `F_p` for an odd prime `p < 2^61`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(3..1 << 61).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue of an integer in `[0, p)`.
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = Field::mul(self, r, a);
            }
            a = Field::mul(self, a, a);
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, (self.p - 2) as u128))
    }

    #[inline]
    fn is_zero(&self, a: u64) -> bool {
        a == 0
    }

    fn embed(&self, x: u64) -> u64 {
        x
    }

    #[inline]
    fn mul_base(&self, a: u64, s: u64) -> u64 {
        Field::mul(self, a, s)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// The cubic extension `F_p[t] / (t^3 + a t + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicExtension {
    base: PrimeField,
    a: u64,
    b: u64,
}

impl CubicExtension {
    /// Uses the first irreducible `t^3 + a t + b` in lexicographic order of
    /// `(a, b)` with `b < 64`.
    pub fn new(base: PrimeField) -> Self {
        for a in 0..base.p {
            for b in 1..base.p.min(64) {
                if !has_root(base, a, b) {
                    return CubicExtension { base, a, b };
                }
            }
        }
        unreachable!("irreducible cubics exist over every prime field")
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> (u64, u64) {
        (self.a, self.b)
    }
}

/// Whether `x^3 + a x + b` has a root in `F_p`, via `gcd(x^p - x, f)`.
fn has_root(f: PrimeField, a: u64, b: u64) -> bool {
    // x^p mod (x^3 + a x + b) by square-and-multiply on degree-2 residues
    let modulus = CubicExtension { base: f, a, b };
    let x = [0, 1, 0];
    let mut r = [1, 0, 0];
    let mut base = x;
    let mut e = f.p;
    while e > 0 {
        if e & 1 == 1 {
            r = modulus.mul(r, base);
        }
        base = modulus.mul(base, base);
        e >>= 1;
    }
    let h = [r[0], f.sub(r[1], 1), r[2]];
    let cubic = vec![b, a, 0, 1];
    let g = poly_gcd(f, cubic, h.to_vec());
    g.len() > 1
}

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Monic-free gcd of polynomials with coefficients low to high; the result
/// has length 1 for a nonzero constant.
fn poly_gcd(f: PrimeField, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let inv = f.inv(*b.last().unwrap()).unwrap();
        while a.len() >= b.len() {
            let c = Field::mul(&f, *a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = f.sub(a[shift + i], Field::mul(&f, c, bi));
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl Field for CubicExtension {
    type Elem = [u64; 3];

    fn characteristic(&self) -> u64 {
        self.base.p
    }

    fn zero(&self) -> [u64; 3] {
        [0; 3]
    }

    fn one(&self) -> [u64; 3] {
        [1, 0, 0]
    }

    #[inline]
    fn add(&self, x: [u64; 3], y: [u64; 3]) -> [u64; 3] {
        let f = &self.base;
        [f.add(x[0], y[0]), f.add(x[1], y[1]), f.add(x[2], y[2])]
    }

    #[inline]
    fn sub(&self, x: [u64; 3], y: [u64; 3]) -> [u64; 3] {
        let f = &self.base;
        [f.sub(x[0], y[0]), f.sub(x[1], y[1]), f.sub(x[2], y[2])]
    }

    #[inline]
    fn mul(&self, x: [u64; 3], y: [u64; 3]) -> [u64; 3] {
        let p = self.base.p as u128;
        let m = |a: u64, b: u64| a as u128 * b as u128 % p;
        let c0 = m(x[0], y[0]);
        let c1 = (m(x[0], y[1]) + m(x[1], y[0])) % p;
        let c2 = (m(x[0], y[2]) + m(x[1], y[1]) + m(x[2], y[0])) % p;
        let c3 = (m(x[1], y[2]) + m(x[2], y[1])) % p;
        let c4 = m(x[2], y[2]);
        // t^3 = -a t - b, t^4 = -a t^2 - b t
        let (a, b) = (self.a as u128, self.b as u128);
        let r0 = (c0 + p * p - b * c3 % p) % p;
        let r1 = (c1 + 2 * p * p - a * c3 % p - b * c4 % p) % p;
        let r2 = (c2 + p * p - a * c4 % p) % p;
        [r0 as u64, r1 as u64, r2 as u64]
    }

    fn neg(&self, x: [u64; 3]) -> [u64; 3] {
        let f = &self.base;
        [f.neg(x[0]), f.neg(x[1]), f.neg(x[2])]
    }

    fn inv(&self, x: [u64; 3]) -> Option<[u64; 3]> {
        if x == [0; 3] {
            return None;
        }
        let p = self.base.p as u128;
        let mut e = p * p * p - 2;
        let (mut r, mut b) = (self.one(), x);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        Some(r)
    }

    #[inline]
    fn is_zero(&self, x: [u64; 3]) -> bool {
        x == [0; 3]
    }

    fn embed(&self, x: u64) -> [u64; 3] {
        [x, 0, 0]
    }

    #[inline]
    fn mul_base(&self, x: [u64; 3], s: u64) -> [u64; 3] {
        let f = &self.base;
        [
            Field::mul(f, x[0], s),
            Field::mul(f, x[1], s),
            Field::mul(f, x[2], s),
        ]
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u64; 3] {
        let f = &self.base;
        [f.random(rng), f.random(rng), f.random(rng)]
    }
}

/// Largest supported degree of [`ExtensionField`].
pub const MAX_EXTENSION_DEGREE: usize = 24;

/// The degree-`N` extension `F_p[t] / (m(t))` for a monic irreducible `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionField<const N: usize> {
    base: PrimeField,
    /// Low coefficients of `m`; the leading one is implicit.
    modulus: [u64; N],
}

impl<const N: usize> ExtensionField<N> {
    /// Draws candidate moduli from a generator seeded by `p` until one passes
    /// Rabin's irreducibility test.
    pub fn new(base: PrimeField) -> Self {
        assert!(
            (2..=MAX_EXTENSION_DEGREE).contains(&N),
            "unsupported extension degree {N}"
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(base.p ^ (N as u64) << 56);
        loop {
            let mut modulus = [0; N];
            for c in modulus.iter_mut() {
                *c = base.random(&mut rng);
            }
            if modulus[0] == 0 {
                continue;
            }
            let candidate = ExtensionField { base, modulus };
            if candidate.is_irreducible() {
                return candidate;
            }
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// Coefficients of the monic modulus, low to high.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.to_vec();
        m.push(1);
        m
    }

    fn t(&self) -> [u64; N] {
        let mut t = [0; N];
        t[1] = 1;
        t
    }

    /// `x^(p^k)` in the quotient ring.
    fn frobenius(&self, x: [u64; N], k: usize) -> [u64; N] {
        let mut r = x;
        for _ in 0..k {
            r = self.pow(r, self.base.p as u128);
        }
        r
    }

    fn pow(&self, mut b: [u64; N], mut e: u128) -> [u64; N] {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn is_irreducible(&self) -> bool {
        let t = self.t();
        if self.frobenius(t, N) != t {
            return false;
        }
        let f = self.base;
        (2..=N)
            .filter(|q| N.is_multiple_of(*q) && is_prime(*q as u64))
            .all(|q| {
                let mut h = self.frobenius(t, N / q);
                h[1] = f.sub(h[1], 1);
                poly_gcd(f, self.modulus(), h.to_vec()).len() == 1
            })
    }
}

/// Below this bound products of reduced coefficients fit in 40 bits, so a
/// schoolbook product and its reduction accumulate in `u64` without overflow.
const SMALL_PRIME: u64 = 1 << 20;

impl<const N: usize> ExtensionField<N> {
    fn mul_small(&self, x: [u64; N], y: [u64; N]) -> [u64; N] {
        let p = self.base.p;
        let mut c = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        // t^N = -(m_0 + m_1 t + ... + m_{N-1} t^{N-1})
        for k in (N..2 * N - 1).rev() {
            let top = c[k] % p;
            if top == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                c[k - N + i] += top * (p - m);
            }
        }
        let mut r = [0; N];
        for (ri, ci) in r.iter_mut().zip(c) {
            *ri = ci % p;
        }
        r
    }

    fn mul_wide(&self, x: [u64; N], y: [u64; N]) -> [u64; N] {
        let p = self.base.p as u128;
        let mut c = [0u128; 2 * MAX_EXTENSION_DEGREE];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                c[i + j] += a as u128 * b as u128 % p;
            }
        }
        for k in (N..2 * N - 1).rev() {
            let top = c[k] % p;
            if top == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                c[k - N + i] += top * (p - m as u128) % p;
            }
        }
        let mut r = [0; N];
        for (ri, ci) in r.iter_mut().zip(c) {
            *ri = (ci % p) as u64;
        }
        r
    }
}

impl<const N: usize> Field for ExtensionField<N> {
    type Elem = [u64; N];

    fn characteristic(&self) -> u64 {
        self.base.p
    }

    fn zero(&self) -> [u64; N] {
        [0; N]
    }

    fn one(&self) -> [u64; N] {
        let mut one = [0; N];
        one[0] = 1;
        one
    }

    fn add(&self, mut x: [u64; N], y: [u64; N]) -> [u64; N] {
        for (a, b) in x.iter_mut().zip(y) {
            *a = self.base.add(*a, b);
        }
        x
    }

    fn sub(&self, mut x: [u64; N], y: [u64; N]) -> [u64; N] {
        for (a, b) in x.iter_mut().zip(y) {
            *a = self.base.sub(*a, b);
        }
        x
    }

    fn mul(&self, x: [u64; N], y: [u64; N]) -> [u64; N] {
        if self.base.p < SMALL_PRIME {
            self.mul_small(x, y)
        } else {
            self.mul_wide(x, y)
        }
    }

    fn neg(&self, mut x: [u64; N]) -> [u64; N] {
        for a in x.iter_mut() {
            *a = self.base.neg(*a);
        }
        x
    }

    fn inv(&self, x: [u64; N]) -> Option<[u64; N]> {
        if x == [0; N] {
            return None;
        }
        // acc = x^(p + p^2 + ... + p^(N-1)) and x * acc is the norm of x,
        // which lies in F_p
        let mut acc = self.one();
        let mut y = x;
        for _ in 1..N {
            y = self.frobenius(y, 1);
            acc = self.mul(acc, y);
        }
        let norm = self.mul(x, acc)[0];
        Some(self.mul_base(acc, self.base.inv(norm)?))
    }

    fn is_zero(&self, x: [u64; N]) -> bool {
        x == [0; N]
    }

    fn embed(&self, x: u64) -> [u64; N] {
        let mut e = [0; N];
        e[0] = x;
        e
    }

    fn mul_base(&self, mut x: [u64; N], s: u64) -> [u64; N] {
        for a in x.iter_mut() {
            *a = Field::mul(&self.base, *a, s);
        }
        x
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u64; N] {
        let mut x = [0; N];
        for a in x.iter_mut() {
            *a = self.base.random(rng);
        }
        x
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for &w in &WITNESSES {
        let mut x = powmod(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(3323) && is_prime(10007) && is_prime(32003));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751));
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(3321).is_err());
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
        assert!(is_prime(4611686018427387847));
        assert!(PrimeField::new(4611686018427387847).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(3323).unwrap();
        for a in 1..200 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.reduce(-1), 3322);
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn cubic_extension_is_a_field() {
        for p in [3, 5, 7, 3323, 1_000_000_007, 4294967291] {
            let e = CubicExtension::new(PrimeField::new(p).unwrap());
            let (a, b) = e.modulus();
            for x in 0..p.min(200) {
                let f = e.base();
                let v = f.add(f.add(f.pow(x, 3), f.mul(a, x)), b);
                assert_ne!(v, 0, "modulus has root {x} mod {p}");
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
            for _ in 0..50 {
                let x = e.random_nonzero(&mut rng);
                let y = e.random(&mut rng);
                let z = e.random(&mut rng);
                assert_eq!(e.mul(x, e.inv(x).unwrap()), e.one());
                assert_eq!(e.mul(x, e.add(y, z)), e.add(e.mul(x, y), e.mul(x, z)));
                assert_eq!(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
            }
        }
    }

    fn check_extension<const N: usize>(p: u64) {
        let e = ExtensionField::<N>::new(PrimeField::new(p).unwrap());
        let m = e.modulus();
        assert_eq!((m.len(), m[N]), (N + 1, 1));
        for x in 0..p.min(50) {
            let v = m
                .iter()
                .rev()
                .fold(0, |acc, &c| e.base().add(e.base().mul(acc, x), c));
            assert_ne!(v, 0, "modulus has root {x} mod {p}");
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
        for _ in 0..50 {
            let x = e.random_nonzero(&mut rng);
            let y = e.random(&mut rng);
            let z = e.random(&mut rng);
            assert_eq!(e.mul(x, e.inv(x).unwrap()), e.one());
            assert_eq!(e.mul(x, e.add(y, z)), e.add(e.mul(x, y), e.mul(x, z)));
            assert_eq!(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
            assert_eq!(e.frobenius(x, N), x);
            assert_eq!(e.sub(e.add(x, y), y), x);
        }
        assert_eq!(e.inv(e.zero()), None);
    }

    #[test]
    fn extension_fields() {
        check_extension::<6>(7);
        check_extension::<6>(1021);
        check_extension::<12>(5);
        check_extension::<24>(3);
        check_extension::<4>(3323);
    }
}
