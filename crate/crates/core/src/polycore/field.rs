//! Exact coefficient fields: prime fields GF(p) and arbitrary-precision rationals.
//!
//! Every coefficient-level operation in the toolkit goes through the [`Field`]
//! trait so that the polynomial layer can run over either field. GF(p) elements
//! are canonical representatives in `[0, p-1]`; rationals are kept reduced with
//! positive denominator (num-rational maintains both invariants).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PolyError;

/// A field of coefficients. Implementors carry whatever runtime context the
/// field needs (the prime for GF(p), nothing for the rationals), so the
/// conversion methods take &self by design.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Image of num/den; `None` if the denominator maps to zero.
    fn from_ratio(&self, num: i64, den: u64) -> Option<Self::Elem>;
    /// 0 for the rationals, p for GF(p).
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The prime field GF(p) for an odd prime `5 <= p < 2^31`.
///
/// Characteristics 2 and 3 are rejected: the factor-2 Hessian convention and
/// the cubic Euler identity both degenerate there.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf {
    p: u64,
}

impl Gf {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p < 5 || p >= (1 << 31) || !is_prime(p) {
            return Err(PolyError::BadPrime(p));
        }
        Ok(Gf { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// a^e mod p by square-and-multiply.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let p = self.p;
        let mut base = a % p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }
}

impl Field for Gf {
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
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_ratio(&self, num: i64, den: u64) -> Option<u64> {
        let d = den % self.p;
        let di = self.inv(&d)?;
        Some(self.mul(&self.reduce_i64(num), &di))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// The field of rationals, with `BigRational` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rat;

impl Field for Rat {
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: i64, den: u64) -> Option<BigRational> {
        if den == 0 {
            None
        } else {
            Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Maps a rational into GF(p), failing if the reduced denominator is
/// divisible by p.
pub fn rat_to_gf(gf: &Gf, q: &BigRational) -> Option<u64> {
    let p = BigInt::from(gf.prime());
    let den = (q.denom() % &p + &p) % &p;
    let den: u64 = den.try_into().ok()?;
    let den_inv = gf.inv(&den)?;
    let num = ((q.numer() % &p + &p) % &p).magnitude().try_into().ok()?;
    Some(gf.mul(&num, &den_inv))
}

/// Exact rational from a signed integer, used throughout the closed-form
/// calculators.
pub fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// True iff the rational is an integer; returns it when it fits in i64.
/// num-rational keeps denominators positive and reduced, so checking the
/// denominator against one suffices.
pub fn rat_as_i64(q: &BigRational) -> Option<i64> {
    if q.denom().is_one() {
        q.to_integer().try_into().ok()
    } else {
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
