//! Exact integers and rationals, primality, binomials and the balanced residue.
//!
//! `ExactInt` and `ExactRat` are the `num` big number types; `BigRational`
//! normalizes on construction, so structural equality is canonical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// An odd prime `p >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if is_odd_prime_u64(value) {
            Ok(OddPrime(value))
        } else {
            Err(Error::NotAnOddPrime(value.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    pub fn to_bigint(self) -> ExactInt {
        ExactInt::from(self.0)
    }

    /// `(p - 1) / 2`, the bound of the balanced band.
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        OddPrime::new(value)
    }
}

impl TryFrom<&ExactInt> for OddPrime {
    type Error = Error;

    fn try_from(value: &ExactInt) -> Result<Self> {
        match value.to_u64() {
            Some(v) => OddPrime::new(v),
            None => Err(Error::NotAnOddPrime(value.to_string())),
        }
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Splits `c = r + p*q` with `-(p-1)/2 <= r <= (p-1)/2`.
pub fn balanced_residue(c: &ExactInt, p: OddPrime) -> (ExactInt, ExactInt) {
    let modulus = p.to_bigint();
    let (mut q, mut r) = c.div_mod_floor(&modulus);
    if r > ExactInt::from(p.half()) {
        r -= &modulus;
        q += 1;
    }
    (r, q)
}

/// Bases 2..41 make Miller-Rabin exact below 3.317e24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn deterministic_limit() -> ExactInt {
    "3317044064679887385961981".parse().unwrap()
}

/// True iff `n` is an odd prime. Exact for every `n` below 3.3e24; above that
/// the strong-pseudoprime battery is extended to every base up to `2 ln(n)^2`
/// (Miller's bound).
pub fn is_odd_prime(n: &ExactInt) -> bool {
    if n < &ExactInt::from(3) || n.is_even() {
        return false;
    }
    for small in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let s = ExactInt::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let one = ExactInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut shifts = 0u64;
    while d.is_even() {
        d >>= 1;
        shifts += 1;
    }
    let witness = |a: &ExactInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            return false;
        }
        for _ in 1..shifts {
            x = x.modpow(&ExactInt::from(2), n);
            if x == n_minus_one {
                return false;
            }
        }
        true
    };
    if n < &deterministic_limit() {
        return !MR_BASES.iter().any(|&a| witness(&ExactInt::from(a)));
    }
    let ln = n.bits() as f64 * std::f64::consts::LN_2;
    let bound = (2.0 * ln * ln).ceil() as u64;
    !(2..=bound).any(|a| witness(&ExactInt::from(a)))
}

pub fn is_odd_prime_u64(n: u64) -> bool {
    is_odd_prime(&ExactInt::from(n))
}

/// Exact `C(n, k)` for any integer `n`; zero when `0 <= n < k`.
pub fn binomial(n: &ExactInt, k: u64) -> ExactInt {
    let mut acc = ExactInt::one();
    for i in 0..k {
        acc *= n - ExactInt::from(i);
        acc /= ExactInt::from(i + 1);
    }
    acc
}

/// Exact quotient, or `None` if `divisor` does not divide `dividend`.
pub fn exact_div(dividend: &ExactInt, divisor: &ExactInt) -> Option<ExactInt> {
    if divisor.is_zero() {
        return None;
    }
    let (q, r) = dividend.div_rem(divisor);
    r.is_zero().then_some(q)
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, k| acc * ExactInt::from(k))
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes_between(lo: u64, hi: u64) -> Vec<OddPrime> {
    (lo.max(3)..=hi)
        .filter_map(|n| OddPrime::new(n).ok())
        .collect()
}

pub(crate) fn rat_to_int(r: &ExactRat) -> Option<ExactInt> {
    r.is_integer().then(|| r.to_integer())
}

pub(crate) fn abs_le(c: &ExactInt, bound: u64) -> bool {
    c.abs() <= ExactInt::from(bound)
}
