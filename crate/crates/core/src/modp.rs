//! Arithmetic in the prime field 𝔽_p and binomial coefficients modulo p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    /// Like [`Prime::new`] but additionally rejects `p = 2`.
    pub fn new_odd(p: u32) -> Result<Self> {
        let prime = Self::new(p)?;
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        Ok(prime)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.as_u64()) as u32
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of 𝔽_p, stored canonically in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    value: u32,
    #[serde(skip)]
    prime: Prime,
}

impl Fp {
    pub fn new(value: i64, prime: Prime) -> Self {
        Fp {
            value: prime.reduce(value),
            prime,
        }
    }

    pub fn from_u64(value: u64, prime: Prime) -> Self {
        Fp {
            value: prime.reduce_u64(value),
            prime,
        }
    }

    pub fn zero(prime: Prime) -> Self {
        Fp { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        Fp {
            value: 1 % prime.get(),
            prime,
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let p = self.prime.as_u64();
        let mut base = self.value as u64;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Fp {
            value: acc as u32,
            prime: self.prime,
        }
    }

    /// Multiplicative inverse. A zero input is an error; at call sites that
    /// invert `n/p` this is exactly the `p² | n` obstruction.
    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::NotInvertible {
                prime: self.prime.get(),
            });
        }
        // Fermat: a^(p-2) = a^-1
        Ok(self.pow(self.prime.as_u64() - 2))
    }

    fn check(self, other: Fp) {
        assert_eq!(
            self.prime, other.prime,
            "mixing residues of different primes"
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: add_mod(self.value, rhs.value, self.prime.get()),
            prime: self.prime,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: neg_mod(self.value, self.prime.get()),
            prime: self.prime,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: mul_mod(self.value, rhs.value, self.prime.get()),
            prime: self.prime,
        }
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// `C(n, k)` for `n, k < p`, by the multiplicative formula in 𝔽_p.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    // den is a product of integers < p, hence a unit
    let inv = Fp::from_u64(den, Prime(p as u32)).pow(p - 2).value as u64;
    num * inv % p
}

/// `C(n, k) mod p` by Lucas' theorem on base-p digits.
pub fn binom_mod_p(n: u64, k: u64, p: Prime) -> Fp {
    Fp::from_u64(binom_raw(n, k, p.as_u64()), p)
}

/// `C(n, k) mod p`, rejecting composite moduli.
pub fn binom_mod(n: u64, k: u64, p: u32) -> Result<Fp> {
    Ok(binom_mod_p(n, k, Prime::new(p)?))
}

pub(crate) fn binom_raw(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

/// Binomial with signed upper index: `C(m, k) = 0` whenever `m < 0`, `k < 0`
/// or `k > m`.
pub(crate) fn binom_signed(m: i64, k: i64, p: Prime) -> u32 {
    if m < 0 || k < 0 || k > m {
        return 0;
    }
    binom_raw(m as u64, k as u64, p.as_u64()) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    fn big_binom(n: u64, k: u64) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for i in 0..k {
            acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        acc
    }

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn frozen_binomials() {
        assert_eq!(binom_mod_p(6, 3, p(3)).value(), 2);
        assert_eq!(binom_mod_p(9, 3, p(3)).value(), 0);
        assert_eq!(binom_mod_p(123456789, 0, p(7)).value(), 1);
        assert_eq!(binom_mod_p(3, 5, p(7)).value(), 0);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(binom_mod(6, 3, 9), Err(Error::NotPrime(9))));
        assert!(Prime::new(1).is_err());
        assert!(Prime::new_odd(2).is_err());
        assert!(Prime::new(2).is_ok());
    }

    #[test]
    fn lucas_matches_bigint_up_to_300() {
        for &q in &[3u32, 5, 7] {
            let pr = p(q);
            for n in 0..=300u64 {
                for k in 0..=n {
                    let expect = (big_binom(n, k) % BigUint::from(q)).to_u32().unwrap();
                    assert_eq!(binom_mod_p(n, k, pr).value(), expect, "C({n},{k}) mod {q}");
                }
            }
        }
    }

    #[test]
    fn pascal_identity() {
        for &q in &[2u32, 3, 5, 7, 11] {
            let pr = p(q);
            for n in 1..200u64 {
                for k in 1..=n {
                    let lhs = binom_mod_p(n, k, pr);
                    let rhs = binom_mod_p(n - 1, k - 1, pr) + binom_mod_p(n - 1, k, pr);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn n_choose_p_nonzero_iff_p_squared_not_dividing() {
        for &q in &[3u64, 5, 7] {
            for m in 1..60u64 {
                let n = q * m;
                let nz = !binom_mod_p(n, q, p(q as u32)).is_zero();
                assert_eq!(nz, n % (q * q) != 0, "n={n}, p={q}");
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(Fp::new(2, p(3)).inverse().unwrap().value(), 2);
        assert_eq!(Fp::new(1, p(5)).inverse().unwrap().value(), 1);
        assert_eq!(Fp::new(3, p(5)).inverse().unwrap().value(), 2);
        assert!(matches!(
            Fp::new(0, p(7)).inverse(),
            Err(Error::NotInvertible { prime: 7 })
        ));
        for q in [3u32, 5, 7, 11, 13] {
            for a in 1..q {
                let x = Fp::new(a as i64, p(q));
                assert_eq!((x * x.inverse().unwrap()).value(), 1);
            }
        }
    }

    #[test]
    fn negative_literals_reduce() {
        assert_eq!(Fp::new(-1, p(3)).value(), 2);
        assert_eq!(Fp::new(-7, p(5)).value(), 3);
        assert_eq!((Fp::new(1, p(5)) - Fp::new(3, p(5))).value(), 3);
    }

    #[test]
    fn signed_binomial_boundaries() {
        assert_eq!(binom_signed(-1, 0, p(3)), 0);
        assert_eq!(binom_signed(-1, -1, p(3)), 0);
        assert_eq!(binom_signed(0, 0, p(3)), 1);
        assert_eq!(binom_signed(4, -1, p(3)), 0);
        assert_eq!(binom_signed(4, 2, p(5)), 1);
    }
}
