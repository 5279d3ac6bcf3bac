//! Dense exact polynomials and truncated power series.
//!
//! One series engine serves every exact domain that implements
//! [`Coefficient`]: integers, rationals, and polynomials in `p` with rational
//! coefficients.

mod laurent;
mod poly;
mod poly_in_p;
mod series;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::exact_arith::{ExactInt, ExactRat};

pub use laurent::{laurent_substitute_w, LaurentIntPoly};
pub use poly::{IntPoly, Poly, RatPoly};
pub use poly_in_p::PolynomialInP;
pub use series::{inverse_of_poly, TruncatedSeries};

/// An exact commutative coefficient ring.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, other: &Self) -> Self;

    fn is_unit(&self) -> bool;

    /// `self / unit`; only meaningful when `unit.is_unit()`.
    fn div_unit(&self, unit: &Self) -> Self;
}

impl Coefficient for ExactInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn is_unit(&self) -> bool {
        self.is_one() || (-self).is_one()
    }

    fn div_unit(&self, unit: &Self) -> Self {
        // ±1 is its own inverse
        self * unit
    }
}

impl Coefficient for ExactRat {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn div_unit(&self, unit: &Self) -> Self {
        self / unit
    }
}
