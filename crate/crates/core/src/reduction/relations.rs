use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial, exact_div, factorial, rat_to_int, ExactInt, ExactRat, OddPrime,
};
use crate::poly_series::{IntPoly, TruncatedSeries};

/// `(1+μ)^p - 1`.
pub fn complex_relation(p: OddPrime) -> IntPoly {
    let pb = p.to_bigint();
    let mut coeffs: Vec<ExactInt> = (0..=p.get()).map(|k| binomial(&pb, k)).collect();
    coeffs[0] = ExactInt::zero();
    IntPoly::new(coeffs)
}

/// `((1+μ)^p - 1 - μ^p) / (pμ)`.
pub fn complex_denominator(p: OddPrime) -> Result<IntPoly> {
    let pb = p.to_bigint();
    let mut coeffs = vec![ExactInt::one()];
    for k in 2..p.get() {
        let c = exact_div(&binomial(&pb, k), &pb).ok_or_else(|| {
            Error::IntegralityViolation(format!("C({p},{k}) is not divisible by {p}"))
        })?;
        coeffs.push(c);
    }
    Ok(IntPoly::new(coeffs))
}

/// `K_{p,0..order}`: the coefficients of `-pμ / ((1+μ)^p - 1 - μ^p)`.
pub fn k_series(p: OddPrime, order: usize) -> Result<TruncatedSeries<ExactInt>> {
    negated_inverse(&complex_denominator(p)?, order)
}

fn negated_inverse(denominator: &IntPoly, order: usize) -> Result<TruncatedSeries<ExactInt>> {
    if order == 0 {
        return Err(Error::EmptyOrder);
    }
    Ok(TruncatedSeries::from_poly(denominator, order)
        .inverse()?
        .neg())
}

fn int_or_violation(value: ExactRat, what: impl FnOnce() -> String) -> Result<ExactInt> {
    rat_to_int(&value).ok_or_else(|| Error::IntegralityViolation(format!("{} = {value}", what())))
}

/// `n (n²-1²)(n²-3²)...(n²-(2j-1)²) / (2^(2j) (2j+1)!)` at `n = p`.
fn f_coefficient(p: &ExactInt, j: u64) -> ExactRat {
    let p2 = p * p;
    let mut num = p.clone();
    for i in 1..=j {
        let odd = ExactInt::from(2 * i - 1);
        num *= &p2 - &odd * &odd;
    }
    let den = (ExactInt::one() << (2 * j)) * factorial(2 * j + 1);
    ExactRat::new(num, den)
}

/// `f_p(w)`, monic of degree `(p-1)/2` with constant term `p`.
pub fn f_polynomial(p: OddPrime) -> Result<IntPoly> {
    let pb = p.to_bigint();
    let top = p.half();
    let mut coeffs = vec![pb.clone()];
    for j in 1..top {
        coeffs.push(int_or_violation(f_coefficient(&pb, j), || {
            format!("f_{p} coefficient of w^{j}")
        })?);
    }
    coeffs.push(ExactInt::one());
    Ok(IntPoly::new(coeffs))
}

/// `w·f_p(w)`, the KO relation.
pub fn ko_relation(p: OddPrime) -> Result<IntPoly> {
    Ok(f_polynomial(p)?.shift(1))
}

/// The KO relation summed in its own expanded form
/// `pω + Σ_{j=2}^{(p-1)/2} [p(p²-1²)...(p²-(2j-3)²) / (2^(2j-2) (2j-1)!)] ω^j + ω^((p+1)/2)`,
/// checked against `w·f_p(w)`.
pub fn ko_relation_expanded(p: OddPrime) -> Result<IntPoly> {
    let pb = p.to_bigint();
    let p2 = &pb * &pb;
    let mut coeffs = vec![ExactInt::zero(), pb.clone()];
    for j in 2..=p.half() {
        let mut num = pb.clone();
        for i in 1..j {
            let odd = ExactInt::from(2 * i - 1);
            num *= &p2 - &odd * &odd;
        }
        let den = (ExactInt::one() << (2 * j - 2)) * factorial(2 * j - 1);
        coeffs.push(int_or_violation(ExactRat::new(num, den), || {
            format!("KO relation coefficient of w^{j} for p = {p}")
        })?);
    }
    coeffs.push(ExactInt::one());
    let expanded = IntPoly::new(coeffs);
    if expanded != ko_relation(p)? {
        return Err(Error::ConsistencyViolation(format!(
            "expanded KO relation differs from w*f_{p}(w)"
        )));
    }
    Ok(expanded)
}

/// `(w·f_p(w) - ω^((p+1)/2)) / (pω)`.
pub fn ko_denominator(p: OddPrime) -> Result<IntPoly> {
    let f = f_polynomial(p)?;
    let pb = p.to_bigint();
    let body = &f.coeffs()[..f.coeffs().len() - 1];
    let coeffs = body
        .iter()
        .enumerate()
        .map(|(j, c)| {
            exact_div(c, &pb).ok_or_else(|| {
                Error::IntegralityViolation(format!(
                    "f_{p} coefficient of w^{j} not divisible by {p}"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// `M_{p,0..order}`: the coefficients of `-pω / (w·f_p(w) - ω^((p+1)/2))`.
pub fn m_series(p: OddPrime, order: usize) -> Result<TruncatedSeries<ExactInt>> {
    negated_inverse(&ko_denominator(p)?, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::odd_primes_between;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&c| ExactInt::from(c)).collect()
    }

    #[test]
    fn complex_relations() {
        assert_eq!(complex_relation(p(3)), IntPoly::from_i64s(&[0, 3, 3, 1]));
        assert_eq!(
            complex_relation(p(5)),
            IntPoly::from_i64s(&[0, 5, 10, 10, 5, 1])
        );
        assert_eq!(complex_relation(p(7)).coeff(2), ExactInt::from(21));
        assert_eq!(
            complex_denominator(p(3)).unwrap(),
            IntPoly::from_i64s(&[1, 1])
        );
        assert_eq!(
            complex_denominator(p(5)).unwrap(),
            IntPoly::from_i64s(&[1, 2, 2, 1])
        );
        assert_eq!(
            complex_denominator(p(7)).unwrap(),
            IntPoly::from_i64s(&[1, 3, 5, 5, 3, 1])
        );
    }

    #[test]
    fn k_series_small_primes() {
        assert_eq!(
            k_series(p(3), 6).unwrap().into_coeffs(),
            ints(&[-1, 1, -1, 1, -1, 1])
        );
        assert_eq!(
            k_series(p(5), 6).unwrap().into_coeffs(),
            ints(&[-1, 2, -2, 1, 0, 0])
        );
        assert!(matches!(k_series(p(5), 0), Err(Error::EmptyOrder)));
    }

    #[test]
    fn k_series_p23() {
        // K_6 here is -4224; the closed form -(p^2-1)(2p^4-145p^2+863)/60480 agrees.
        assert_eq!(
            k_series(p(23), 7).unwrap().into_coeffs(),
            ints(&[-1, 11, -44, 22, 374, -572, -4224])
        );
    }

    #[test]
    fn f_polynomials() {
        assert_eq!(f_polynomial(p(3)).unwrap(), IntPoly::from_i64s(&[3, 1]));
        assert_eq!(f_polynomial(p(5)).unwrap(), IntPoly::from_i64s(&[5, 5, 1]));
        assert_eq!(
            f_polynomial(p(7)).unwrap(),
            IntPoly::from_i64s(&[7, 14, 7, 1])
        );
    }

    #[test]
    fn ko_relations() {
        assert_eq!(
            ko_relation_expanded(p(3)).unwrap(),
            IntPoly::from_i64s(&[0, 3, 1])
        );
        assert_eq!(
            ko_relation_expanded(p(5)).unwrap(),
            IntPoly::from_i64s(&[0, 5, 5, 1])
        );
        assert_eq!(
            ko_relation_expanded(p(7)).unwrap(),
            IntPoly::from_i64s(&[0, 7, 14, 7, 1])
        );
    }

    #[test]
    fn ko_relation_presentations_agree_up_to_101() {
        for q in odd_primes_between(3, 101) {
            let f = f_polynomial(q).unwrap();
            assert!(f.is_monic());
            assert_eq!(f.degree(), Some(q.half() as usize));
            assert_eq!(f.coeff(0), q.to_bigint());
            ko_relation_expanded(q).unwrap();
        }
    }

    #[test]
    fn m_series_small_primes() {
        assert_eq!(
            m_series(p(3), 4).unwrap().into_coeffs(),
            ints(&[-1, 0, 0, 0])
        );
        assert_eq!(
            m_series(p(5), 6).unwrap().into_coeffs(),
            ints(&[-1, 1, -1, 1, -1, 1])
        );
        // M_3 = 4785 = (p^2-1)(31p^4+178p^2+367)/967680 at p = 23
        assert_eq!(
            m_series(p(23), 4).unwrap().into_coeffs(),
            ints(&[-1, 22, -341, 4785])
        );
    }

    #[test]
    fn series_times_denominator_is_minus_one() {
        for q in odd_primes_between(3, 61) {
            let n = 80;
            let k = k_series(q, n).unwrap();
            let d = TruncatedSeries::from_poly(&complex_denominator(q).unwrap(), n);
            assert_eq!(k.mul(&d), TruncatedSeries::one(n).neg());
            let m = m_series(q, n).unwrap();
            let d = TruncatedSeries::from_poly(&ko_denominator(q).unwrap(), n);
            assert_eq!(m.mul(&d), TruncatedSeries::one(n).neg());
        }
    }
}
