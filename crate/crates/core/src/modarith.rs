//! Binomial arithmetic over the integers and over prime fields, together with
//! the gcd invariant `R(x, y)` and its p-adic divisibility criterion.
//!
//! `R(x, y) = gcd{C(x,1), C(x+1,2), ..., C(x+y-1,y)}` for `y >= 1`, and
//! `R(x, 0) = 0`. Whether a prime `p` divides `R(x, y)` is the arithmetic
//! gate behind every nonvanishing condition in this crate; it reduces to
//! `p^{l_p(y)} | x` where `l_p(y)` is the least `i` with `p^i > y`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::ArithError;

/// The prime field `GF(p)`. Elements are plain residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest characteristic accepted; keeps every product inside `u64`.
    pub const MAX_PRIME: u32 = (1 << 31) - 1;

    pub fn new(p: u32) -> Result<Self, ArithError> {
        if p > Self::MAX_PRIME {
            return Err(ArithError::PrimeTooLarge(p));
        }
        if !is_prime(p as u64) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, k: u64) -> u32 {
        if k.is_multiple_of(2) {
            1
        } else {
            self.p - 1
        }
    }

    /// `C(a, b) mod p` by Lucas' theorem. Zero when `b < 0` or `b > a`.
    pub fn binomial(self, a: u64, b: i64) -> u32 {
        if b < 0 || b as u64 > a {
            return 0;
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a, b as u64);
        let mut acc = 1u32;
        while b > 0 {
            let (ad, bd) = (a % p, b % p);
            if bd > ad {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(ad as u32, bd as u32));
            a /= p;
            b /= p;
        }
        acc
    }

    // C(n, k) mod p for n < p
    fn small_binomial(self, n: u32, k: u32) -> u32 {
        let k = k.min(n - k);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..k {
            num = self.mul(num, n - i);
            den = self.mul(den, i + 1);
        }
        self.mul(num, self.inv(den))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    // Each partial product is C(a - b + i, i), so the division is exact.
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// `C(a, b) mod p` via Lucas digit decomposition.
pub fn binomial_mod_p(a: u64, b: i64, field: PrimeField) -> u32 {
    field.binomial(a, b)
}

/// `R(x, y) = gcd{C(x,1), C(x+1,2), ..., C(x+y-1,y)}`, with `R(x, 0) = 0`.
pub fn r_gcd(x: u64, y: u64) -> BigUint {
    let mut g = BigUint::zero();
    // running value of C(x+j-1, j)
    let mut c = BigUint::one();
    for j in 1..=y {
        c *= x + j - 1;
        c /= j;
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Least `i` with `p^i > y`.
pub fn l_p(y: u64, field: PrimeField) -> u32 {
    let p = field.p() as u128;
    let mut pow: u128 = 1;
    let mut i = 0;
    while pow <= y as u128 {
        pow *= p;
        i += 1;
    }
    i
}

/// Whether `p` divides `R(x, y)`, decided by `p^{l_p(y)} | x`.
///
/// `y = 0` gives `R(x, 0) = 0`, which every prime divides.
pub fn p_divides_r(x: u64, y: u64, field: PrimeField) -> bool {
    if y == 0 {
        return true;
    }
    let p = field.p() as u128;
    let modulus = p.pow(l_p(y, field));
    (x as u128).is_multiple_of(modulus)
}
