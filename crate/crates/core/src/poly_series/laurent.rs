use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::IntPoly;
use crate::exact_arith::ExactInt;

/// Integer Laurent polynomial `sum c_i x^(min_exponent + i)`.
///
/// Normalized so the first and last stored coefficients are nonzero; the zero
/// polynomial has no coefficients and `min_exponent == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentIntPoly {
    min_exponent: i64,
    coeffs: Vec<ExactInt>,
}

impl LaurentIntPoly {
    pub fn new(min_exponent: i64, coeffs: Vec<ExactInt>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        LaurentIntPoly {
            min_exponent: min_exponent + first as i64,
            coeffs: coeffs[first..=last].to_vec(),
        }
    }

    pub fn zero() -> Self {
        LaurentIntPoly {
            min_exponent: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: ExactInt) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: ExactInt, exponent: i64) -> Self {
        Self::new(exponent, vec![c])
    }

    pub fn from_poly(p: &IntPoly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exponent)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exponent + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exponent: i64) -> ExactInt {
        let i = exponent - self.min_exponent;
        if i < 0 {
            return ExactInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentIntPoly {
            min_exponent: self.min_exponent + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The ordinary polynomial `x^(-min_exponent) * self` and the shift used.
    pub fn clear_denominator(&self) -> (IntPoly, i64) {
        (IntPoly::new(self.coeffs.clone()), self.min_exponent)
    }

    /// Whether this equals `x^k * q * divisor` for some integer Laurent `q`,
    /// with `divisor` an ordinary monic polynomial of nonzero constant term.
    pub fn is_divisible_by(&self, divisor: &IntPoly) -> bool {
        let (poly, _) = self.clear_denominator();
        poly.is_divisible_by_monic(divisor).unwrap_or(false)
    }
}

impl Add for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn add(self, rhs: &LaurentIntPoly) -> LaurentIntPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exponent.min(rhs.min_exponent);
        let hi = self
            .max_exponent()
            .unwrap()
            .max(rhs.max_exponent().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentIntPoly::new(lo, coeffs)
    }
}

impl Mul for &LaurentIntPoly {
    type Output = LaurentIntPoly;
    fn mul(self, rhs: &LaurentIntPoly) -> LaurentIntPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentIntPoly::zero();
        }
        let mut out = vec![ExactInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentIntPoly::new(self.min_exponent + rhs.min_exponent, out)
    }
}

/// Evaluates `f` at `w = x + x^-1 - 2`.
pub fn laurent_substitute_w(f: &IntPoly) -> LaurentIntPoly {
    let w = LaurentIntPoly::new(
        -1,
        vec![ExactInt::one(), ExactInt::from(-2), ExactInt::one()],
    );
    f.coeffs()
        .iter()
        .rev()
        .fold(LaurentIntPoly::zero(), |acc, c| {
            &(&acc * &w) + &LaurentIntPoly::constant(c.clone())
        })
}
