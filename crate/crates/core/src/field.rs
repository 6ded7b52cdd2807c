//! Coefficient fields.
//!
//! Linear algebra is written once against the [`Field`] trait, which passes
//! the field as a context value so that prime moduli can be chosen at run
//! time. Two implementations exist: [`Rationals`] (exact, arbitrary
//! precision) and [`PrimeField`] (word-sized prime modulus).

use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Mersenne prime 2⁶¹ − 1, the default modulus for randomized checks.
pub const MERSENNE_61: u64 = (1 << 61) - 1;
/// Mersenne prime 2³¹ − 1, the secondary modulus.
pub const MERSENNE_31: u64 = (1 << 31) - 1;

/// A field with context-carried operations.
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// The field with `p` elements, `p` a prime below 2⁶³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Checks that `p` is prime and small enough for overflow-free addition.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::Usage(alloc::format!("{p} is not a prime below 2^63")));
        }
        Ok(PrimeField { p })
    }

    pub const fn mersenne61() -> Self {
        PrimeField { p: MERSENNE_61 }
    }

    pub const fn mersenne31() -> Self {
        PrimeField { p: MERSENNE_31 }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn reduce_int(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = a.mod_floor(&p);
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational in the field; fails when `p` divides the denominator.
    pub fn reduce_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return Err(Error::Reduction { prime: self.p });
        }
        let num = self.reduce_int(q.numer());
        Ok(self.mul_u(num, self.inv_u(den).expect("nonzero")))
    }

    #[inline]
    pub fn add_u(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_u(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul_u(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn neg_u(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow_u(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_u(acc, base);
            }
            base = self.mul_u(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv_u(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow_u(a, self.p - 2))
        }
    }

    /// Smallest-height rational `r/s` with `r ≡ a·s (mod p)` and
    /// `|r|, |s| ≤ sqrt(p/2)`, if one exists.
    pub fn rational_reconstruct(&self, a: u64) -> Option<BigRational> {
        let p = self.p as i128;
        let bound = isqrt((self.p / 2) as u128) as i128;
        let (mut r0, mut r1) = (p, (a % self.p) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if s1 == 0 || s1.abs() > bound {
            return None;
        }
        let (num, den) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        // the reduced fraction must still map back to `a`
        match self.reduce_rational(&q) {
            Ok(v) if v == a % self.p => Some(q),
            _ => None,
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_u(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.sub_u(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_u(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.neg_u(*a)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_u(*a)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
}

/// Run-time tag naming the field a computation was carried out over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rationals,
    Prime(u64),
}

impl Default for CoeffField {
    fn default() -> Self {
        CoeffField::Prime(MERSENNE_61)
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "QQ"),
            CoeffField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
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

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[BigRational]) -> alloc::vec::Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in v {
        if !q.is_zero() {
            lcm = lcm.lcm(q.denom());
        }
    }
    let mut ints: alloc::vec::Vec<BigInt> = v
        .iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for a in &ints {
        g = g.gcd(a);
    }
    if g.is_zero() {
        return ints;
    }
    let lead_negative = ints
        .iter()
        .find(|a| !a.is_zero())
        .map(|a| a.sign() == Sign::Minus)
        .unwrap_or(false);
    if lead_negative {
        g = -g;
    }
    for a in ints.iter_mut() {
        *a = &*a / &g;
    }
    ints
}
