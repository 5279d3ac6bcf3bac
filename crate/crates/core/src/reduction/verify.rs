use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{complete_reduce, SubstitutionMode, Theory};
use crate::error::Result;
use crate::exact_arith::{abs_le, balanced_residue, ExactInt, OddPrime};
use crate::poly_series::{laurent_substitute_w, IntPoly, LaurentIntPoly};

fn terms_poly(terms: &[(usize, ExactInt)]) -> IntPoly {
    let len = terms.iter().map(|(e, _)| e + 1).max().unwrap_or(0);
    let mut coeffs = vec![ExactInt::zero(); len];
    for (e, c) in terms {
        coeffs[*e] += c;
    }
    IntPoly::new(coeffs)
}

/// Whether `p·X = Σ coefficient·X^exponent` holds exactly in the ring, i.e.
/// the difference is a multiple of the theory's relation. Repeated exponents
/// are summed.
pub fn verify_finite_identity(theory: Theory, p: OddPrime, terms: &[(usize, ExactInt)]) -> bool {
    let Ok(relation) = theory.relation(p) else {
        return false;
    };
    let lhs = IntPoly::monomial(p.to_bigint(), 1);
    let diff = &lhs - &terms_poly(terms);
    diff.is_divisible_by_monic(&relation).unwrap_or(false)
}

/// The first balanced coefficients agree with the base series modulo `p`:
/// indices `0..=p` (complex) or `0..=(p-1)/2` (real).
pub fn prefix_congruence_check(theory: Theory, p: OddPrime) -> Result<bool> {
    let last = match theory {
        Theory::Complex => p.as_usize(),
        Theory::Real => p.half() as usize,
    };
    let base = theory.base_series(p, last + 1)?;
    let reduced = complete_reduce(theory, p, last + 1, SubstitutionMode::SelfSnapshot)?;
    Ok(base
        .coeffs()
        .iter()
        .zip(reduced.balanced())
        .all(|(k, a)| balanced_residue(k, p).0 == *a))
}

/// A claimed eventually periodic complete reduction:
/// preperiod `P`, then the cycle `C` repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCertificate {
    pub theory: Theory,
    pub p: OddPrime,
    pub preperiod: Vec<ExactInt>,
    pub cycle: Vec<ExactInt>,
    verified: bool,
}

impl PeriodCertificate {
    pub fn new(
        theory: Theory,
        p: OddPrime,
        preperiod: Vec<ExactInt>,
        cycle: Vec<ExactInt>,
    ) -> Self {
        PeriodCertificate {
            theory,
            p,
            preperiod,
            cycle,
            verified: false,
        }
    }

    pub fn from_i64(theory: Theory, p: OddPrime, preperiod: &[i64], cycle: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&c| ExactInt::from(c)).collect();
        Self::new(theory, p, conv(preperiod), conv(cycle))
    }

    /// Runs [`certify_period`] and records the outcome.
    pub fn verify(&mut self) -> bool {
        self.verified = certify_period(self);
        self.verified
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// Proves `p·X = Σ P_n X^(e+n) + X^(e+s)·C(X)/(1 - X^t)` by checking that
/// `p·X(1-X^t) - (1-X^t)·Σ P_n X^(e+n) - Σ C_m X^(e+s+m)` is divisible by the
/// relation. `false` means "not proved", nothing more.
pub fn certify_period(cert: &PeriodCertificate) -> bool {
    let (p, s, t) = (cert.p, cert.preperiod.len(), cert.cycle.len());
    if t == 0
        || !cert
            .preperiod
            .iter()
            .chain(&cert.cycle)
            .all(|c| abs_le(c, p.half()))
    {
        return false;
    }
    let Ok(relation) = cert.theory.relation(p) else {
        return false;
    };
    let e = cert.theory.base_exponent(p);
    let one_minus = &IntPoly::one() - &IntPoly::monomial(ExactInt::one(), t);

    let pre: Vec<(usize, ExactInt)> = cert
        .preperiod
        .iter()
        .enumerate()
        .map(|(n, c)| (e + n, c.clone()))
        .collect();
    let cyc: Vec<(usize, ExactInt)> = cert
        .cycle
        .iter()
        .enumerate()
        .map(|(m, c)| (e + s + m, c.clone()))
        .collect();

    let lhs = &IntPoly::monomial(p.to_bigint(), 1) - &terms_poly(&pre);
    let q = &(&one_minus * &lhs) - &terms_poly(&cyc);
    q.is_divisible_by_monic(&relation).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RealificationOutcome {
    /// `w·f_p(w)` at `w = x + 1/x - 2` equals `x^(-(p+1)/2) (x-1)(x^p-1)`.
    ClosedForm,
    /// Not the closed form, but still divisible by `x^p - 1`.
    DivisibleOnly,
    Failed,
}

impl RealificationOutcome {
    pub fn holds(self) -> bool {
        self == RealificationOutcome::ClosedForm
    }
}

pub fn realification_check(p: OddPrime) -> Result<RealificationOutcome> {
    let substituted = laurent_substitute_w(&Theory::Real.relation(p)?);
    let n = p.as_usize();
    // (x - 1)(x^p - 1) = x^(p+1) - x^p - x + 1
    let mut coeffs = vec![ExactInt::zero(); n + 2];
    coeffs[0] = ExactInt::one();
    coeffs[1] = -ExactInt::one();
    coeffs[n] = -ExactInt::one();
    coeffs[n + 1] = ExactInt::one();
    let closed = LaurentIntPoly::new(-(n.div_ceil(2) as i64), coeffs);
    if substituted == closed {
        return Ok(RealificationOutcome::ClosedForm);
    }
    let mut xp_minus_one = vec![ExactInt::zero(); n + 1];
    xp_minus_one[0] = -ExactInt::one();
    xp_minus_one[n] = ExactInt::one();
    if substituted.is_divisible_by(&IntPoly::new(xp_minus_one)) {
        Ok(RealificationOutcome::DivisibleOnly)
    } else {
        Ok(RealificationOutcome::Failed)
    }
}
