use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coefficient, IntPoly, Poly, RatPoly};
use crate::exact_arith::{ExactInt, ExactRat};

/// An element of `Q[p]`, always in canonical expanded form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolynomialInP(RatPoly);

impl PolynomialInP {
    pub fn new(poly: RatPoly) -> Self {
        PolynomialInP(poly)
    }

    pub fn from_rats(coeffs: Vec<ExactRat>) -> Self {
        PolynomialInP(Poly::new(coeffs))
    }

    /// Build from `(numerator, denominator)` pairs, low degree first.
    pub fn from_fracs(coeffs: &[(i64, i64)]) -> Self {
        Self::from_rats(
            coeffs
                .iter()
                .map(|&(n, d)| ExactRat::new(ExactInt::from(n), ExactInt::from(d)))
                .collect(),
        )
    }

    pub fn constant(c: ExactRat) -> Self {
        PolynomialInP(Poly::constant(c))
    }

    /// The indeterminate `p` itself.
    pub fn p() -> Self {
        PolynomialInP(Poly::x())
    }

    pub fn as_poly(&self) -> &RatPoly {
        &self.0
    }

    pub fn into_poly(self) -> RatPoly {
        self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    /// Coefficient of `p^k`.
    pub fn coeff(&self, k: usize) -> ExactRat {
        self.0.coeff(k)
    }

    pub fn eval(&self, p: &ExactInt) -> ExactRat {
        self.0.eval(&ExactRat::from_integer(p.clone()))
    }

    pub fn eval_u64(&self, p: u64) -> ExactRat {
        self.eval(&ExactInt::from(p))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> ExactInt {
        self.0
            .coeffs()
            .iter()
            .fold(ExactInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Splits `self = content * primitive` with `primitive` an integer
    /// polynomial of content one and positive leading coefficient.
    pub fn content_and_primitive(&self) -> (ExactRat, IntPoly) {
        if self.0.is_zero() {
            return (ExactRat::zero(), IntPoly::zero());
        }
        let lcm = self.denominator_lcm();
        let scaled: Vec<ExactInt> = self
            .0
            .coeffs()
            .iter()
            .map(|c| (c * ExactRat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = scaled.iter().fold(ExactInt::zero(), |acc, c| acc.gcd(c));
        if scaled.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let primitive = Poly::new(scaled.iter().map(|c| c / &g).collect());
        (ExactRat::new(g, lcm), primitive)
    }

    /// Cosmetic factored form, e.g. `-(p^2-1)(7p^2+17)/5760`.
    ///
    /// Pulls out the rational content, then the factors `p^2 - (2k-1)^2` and
    /// finally `p - 1`, `p + 1`. Only for display; equality always uses the
    /// expanded form.
    pub fn factored_display(&self) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        let (content, mut rest) = self.content_and_primitive();
        let mut factors: Vec<String> = Vec::new();
        let max_k = rest.degree().unwrap_or(0) as i64;
        for k in 1..=max_k {
            let odd = 2 * k - 1;
            let f = IntPoly::from_i64s(&[-odd * odd, 0, 1]);
            while let Ok((q, r)) = rest.divrem_monic(&f) {
                if !r.is_zero() || rest.degree() < Some(2) {
                    break;
                }
                factors.push(format!("(p^2-{})", odd * odd));
                rest = q;
            }
        }
        for (label, f) in [
            ("(p-1)", IntPoly::from_i64s(&[-1, 1])),
            ("(p+1)", IntPoly::from_i64s(&[1, 1])),
        ] {
            while let Ok((q, r)) = rest.divrem_monic(&f) {
                if !r.is_zero() || rest.degree() < Some(1) {
                    break;
                }
                factors.push(label.into());
                rest = q;
            }
        }
        let cofactor = compact(&rest);
        let rest_is_one = rest.is_one();
        if !rest_is_one {
            let bare = content.is_one() || !cofactor.contains(['+', '-']);
            if factors.is_empty() && bare {
                factors.push(cofactor);
            } else {
                factors.push(format!("({cofactor})"));
            }
        }

        let mut out = String::new();
        if content.is_negative() {
            out.push('-');
        }
        let num = content.numer().abs();
        let body = factors.concat();
        if body.is_empty() {
            out.push_str(&num.to_string());
        } else {
            if !num.is_one() {
                out.push_str(&num.to_string());
            }
            out.push_str(&body);
        }
        if !content.denom().is_one() {
            out.push('/');
            out.push_str(&content.denom().to_string());
        }
        out
    }
}

fn compact(poly: &IntPoly) -> String {
    poly.display_in("p").replace(' ', "")
}

impl fmt::Display for PolynomialInP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_in("p"))
    }
}

impl Add for PolynomialInP {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        PolynomialInP(&self.0 + &rhs.0)
    }
}

impl Sub for PolynomialInP {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        PolynomialInP(&self.0 - &rhs.0)
    }
}

impl Mul for PolynomialInP {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        PolynomialInP(&self.0 * &rhs.0)
    }
}

impl Neg for PolynomialInP {
    type Output = Self;
    fn neg(self) -> Self {
        PolynomialInP(-&self.0)
    }
}

impl<'a> AddAssign<&'a PolynomialInP> for PolynomialInP {
    fn add_assign(&mut self, rhs: &'a PolynomialInP) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a PolynomialInP> for PolynomialInP {
    fn sub_assign(&mut self, rhs: &'a PolynomialInP) {
        self.0 -= &rhs.0;
    }
}

impl Zero for PolynomialInP {
    fn zero() -> Self {
        PolynomialInP(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for PolynomialInP {
    fn one() -> Self {
        PolynomialInP(Poly::one())
    }
}

impl Coefficient for PolynomialInP {
    fn mul_ref(&self, other: &Self) -> Self {
        PolynomialInP(&self.0 * &other.0)
    }

    fn is_unit(&self) -> bool {
        self.0.degree() == Some(0)
    }

    fn div_unit(&self, unit: &Self) -> Self {
        let inv = ExactRat::one() / unit.0.coeff(0);
        PolynomialInP(self.0.scale(&inv))
    }
}
