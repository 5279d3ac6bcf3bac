use super::{Coefficient, Poly};
use crate::error::{Error, Result};

/// The first `order` coefficients of a formal power series.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = C::one();
        }
        s
    }

    /// Truncates (or zero-pads) a polynomial to `order` terms.
    pub fn from_poly(poly: &Poly<C>, order: usize) -> Self {
        TruncatedSeries {
            coeffs: (0..order).map(|i| poly.coeff(i)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Multiply by `x^k`; the order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += &a.mul_ref(b);
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse to the same order, one coefficient at a time.
    pub fn inverse(&self) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Err(Error::EmptyOrder);
        };
        if !c0.is_unit() {
            return Err(Error::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut inv: Vec<C> = Vec::with_capacity(n);
        inv.push(C::one().div_unit(c0));
        for k in 1..n {
            let mut acc = C::zero();
            for (j, sj) in self.coeffs[1..=k].iter().enumerate() {
                if !sj.is_zero() {
                    acc += &sj.mul_ref(&inv[k - 1 - j]);
                }
            }
            inv.push((-acc).div_unit(c0));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// True iff every coefficient after the first is zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

/// Inverse of a series given by a polynomial (typically sparse or short).
pub fn inverse_of_poly<C: Coefficient>(poly: &Poly<C>, order: usize) -> Result<TruncatedSeries<C>> {
    TruncatedSeries::from_poly(poly, order).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{ExactInt, ExactRat};
    use crate::poly_series::PolynomialInP;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn is(v: &[i64]) -> TruncatedSeries<ExactInt> {
        TruncatedSeries::new(v.iter().map(|&c| ExactInt::from(c)).collect())
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            is(&[1, 2, 2, 1, 0, 0, 0]).inverse().unwrap(),
            is(&[1, -2, 2, -1, 0, 0, 1])
        );
        assert_eq!(is(&[1, 0, 0, 0]).inverse().unwrap(), is(&[1, 0, 0, 0]));
        assert_eq!(
            is(&[1, 1, 0, 0, 0]).inverse().unwrap(),
            is(&[1, -1, 1, -1, 1])
        );
        assert_eq!(is(&[-1, 1, 0]).inverse().unwrap(), is(&[-1, -1, -1]));
    }

    #[test]
    fn inverse_errors() {
        assert!(matches!(
            is(&[2, 1]).inverse(),
            Err(Error::NonUnitConstantTerm)
        ));
        assert!(matches!(
            is(&[0, 1]).inverse(),
            Err(Error::NonUnitConstantTerm)
        ));
        assert!(matches!(is(&[]).inverse(), Err(Error::EmptyOrder)));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(is(&[1, 1]).mul(&is(&[1, -1])), is(&[1, 0]));
        assert_eq!(is(&[4, 5]).shift(1), is(&[0, 4, 5]));
        assert_eq!(
            is(&[-1, 2, -2, 1, 0, 0]).mul(&is(&[1, 2, 2, 1, 0, 0])),
            is(&[-1, 0, 0, 0, 0, 0])
        );
        // min order
        assert_eq!(is(&[1, 2, 3]).add(&is(&[1, 1])), is(&[2, 3]));
    }

    #[test]
    fn inverse_over_polynomials_in_p() {
        // 1/(1 + p x) = 1 - p x + p^2 x^2 - ...
        let s = TruncatedSeries::new(vec![
            PolynomialInP::one(),
            PolynomialInP::p(),
            PolynomialInP::zero(),
        ]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeff(1), &-PolynomialInP::p());
        assert_eq!(inv.coeff(2), &(PolynomialInP::p() * PolynomialInP::p()));
    }

    fn unit_int_series() -> impl Strategy<Value = TruncatedSeries<ExactInt>> {
        (prop::bool::ANY, prop::collection::vec(-30i64..30, 0..20)).prop_map(|(neg, rest)| {
            let mut v = vec![if neg { -1 } else { 1 }];
            v.extend(rest);
            is(&v)
        })
    }

    fn unit_rat_series() -> impl Strategy<Value = TruncatedSeries<ExactRat>> {
        prop::collection::vec((-30i64..30, 1i64..12), 1..14).prop_filter_map("unit", |v| {
            let c: Vec<ExactRat> = v
                .iter()
                .map(|&(n, d)| ExactRat::new(n.into(), d.into()))
                .collect();
            (!c[0].is_zero()).then(|| TruncatedSeries::new(c))
        })
    }

    fn unit_pin_series() -> impl Strategy<Value = TruncatedSeries<PolynomialInP>> {
        (
            1i64..9,
            prop::collection::vec(prop::collection::vec((-9i64..9, 1i64..5), 0..3), 0..6),
        )
            .prop_map(|(c0, rest)| {
                let mut v = vec![PolynomialInP::from_fracs(&[(c0, 3)])];
                v.extend(rest.iter().map(|p| PolynomialInP::from_fracs(p)));
                TruncatedSeries::new(v)
            })
    }

    proptest! {
        #[test]
        fn int_inverse_multiplies_back(s in unit_int_series()) {
            let prod = s.mul(&s.inverse().unwrap());
            prop_assert_eq!(prod, TruncatedSeries::one(s.order()));
        }

        #[test]
        fn rat_inverse_multiplies_back(s in unit_rat_series()) {
            let prod = s.mul(&s.inverse().unwrap());
            prop_assert_eq!(prod, TruncatedSeries::one(s.order()));
        }

        #[test]
        fn pin_inverse_multiplies_back(s in unit_pin_series()) {
            let prod = s.mul(&s.inverse().unwrap());
            prop_assert_eq!(prod, TruncatedSeries::one(s.order()));
        }

        #[test]
        fn inverse_truncation_coherent(s in unit_int_series(), cut in 0usize..20) {
            let m = cut.min(s.order());
            prop_assume!(m >= 1);
            prop_assert_eq!(s.inverse().unwrap().truncate(m), s.truncate(m).inverse().unwrap());
        }
    }
}
