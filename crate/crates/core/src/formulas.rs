//! `K_n(p)` and `M_n(p)` as exact polynomials in `p`, and Bernoulli numbers.
//!
//! The series engine runs over `Q[p]`: the generic denominators have
//! coefficients that are polynomials in `p`, and coefficient `n` of the
//! negated inverse is the formula for `K_{p,n}` (resp. `M_{p,n}`). It agrees
//! with the integer series for every prime above the entry's threshold.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exact_arith::{
    binomial, factorial, odd_primes_between, rat_to_int, ExactInt, ExactRat, OddPrime,
};
use crate::poly_series::{IntPoly, PolynomialInP, TruncatedSeries};
use crate::reduction::Theory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaEntry {
    pub theory: Theory,
    pub n: usize,
    pub formula: PolynomialInP,
    /// Smallest `p` for which the formula gives the series coefficient.
    pub min_valid_p: u64,
}

impl FormulaEntry {
    pub fn applies_to(&self, p: OddPrime) -> bool {
        p.get() >= self.min_valid_p
    }

    pub fn eval(&self, p: OddPrime) -> ExactRat {
        self.formula.eval_u64(p.get())
    }
}

pub fn min_valid_p(theory: Theory, n: usize) -> u64 {
    match (theory, n) {
        (Theory::Complex, 0) => 0,
        (Theory::Complex, n) => n as u64 + 2,
        (Theory::Real, n) => 2 * n as u64 + 3,
    }
}

/// `C(p, k) = p(p-1)...(p-k+1)/k!` as a polynomial in `p`.
pub fn binomial_in_p(k: usize) -> PolynomialInP {
    let mut acc = IntPoly::one();
    for i in 0..k {
        acc = &acc * &IntPoly::from_i64s(&[-(i as i64), 1]);
    }
    let inv = ExactRat::new(ExactInt::one(), factorial(k as u64));
    PolynomialInP::new(acc.to_rat().scale(&inv))
}

/// `1 + Σ_{k=2}^{order} (C(p,k)/p) μ^(k-1)` to `order` terms.
fn generic_complex_denominator(order: usize) -> TruncatedSeries<PolynomialInP> {
    let mut coeffs = vec![PolynomialInP::one()];
    for k in 2..=order {
        // C(p,k)/p has no constant term to drop; it is (p-1)...(p-k+1)/k!
        let shifted = binomial_in_p(k).as_poly().coeffs()[1..].to_vec();
        coeffs.push(PolynomialInP::from_rats(shifted));
    }
    TruncatedSeries::new(coeffs)
}

/// `(p²-1²)(p²-3²)...(p²-(2j-3)²) / (2^(2j-2) (2j-1)!)`, the coefficient of
/// `ω^(j-1)` in the generic KO denominator.
fn ko_denominator_term(j: usize) -> PolynomialInP {
    let mut acc = IntPoly::one();
    for i in 1..j {
        let odd = 2 * i as i64 - 1;
        acc = &acc * &IntPoly::from_i64s(&[-odd * odd, 0, 1]);
    }
    let den = (ExactInt::one() << (2 * j - 2)) * factorial(2 * j as u64 - 1);
    PolynomialInP::new(acc.to_rat().scale(&ExactRat::new(ExactInt::one(), den)))
}

fn generic_ko_denominator(order: usize) -> TruncatedSeries<PolynomialInP> {
    TruncatedSeries::new((1..=order).map(ko_denominator_term).collect())
}

fn formulas_from(theory: Theory, denominator: TruncatedSeries<PolynomialInP>) -> Vec<FormulaEntry> {
    let inv = denominator
        .inverse()
        .expect("generic denominators have constant term 1");
    inv.neg()
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(n, formula)| FormulaEntry {
            theory,
            n,
            formula,
            min_valid_p: min_valid_p(theory, n),
        })
        .collect()
}

/// Formulas for `K_0 .. K_{n_max}`.
pub fn k_formulas(n_max: usize) -> Vec<FormulaEntry> {
    formulas_from(Theory::Complex, generic_complex_denominator(n_max + 1))
}

/// Formulas for `M_0 .. M_{n_max}`.
pub fn m_formulas(n_max: usize) -> Vec<FormulaEntry> {
    formulas_from(Theory::Real, generic_ko_denominator(n_max + 1))
}

pub fn k_formula(n: usize) -> FormulaEntry {
    k_formulas(n).pop().unwrap()
}

pub fn m_formula(n: usize) -> FormulaEntry {
    m_formulas(n).pop().unwrap()
}

pub fn formula(theory: Theory, n: usize) -> FormulaEntry {
    match theory {
        Theory::Complex => k_formula(n),
        Theory::Real => m_formula(n),
    }
}

pub fn formulas(theory: Theory, n_max: usize) -> Vec<FormulaEntry> {
    match theory {
        Theory::Complex => k_formulas(n_max),
        Theory::Real => m_formulas(n_max),
    }
}

/// `(num/den) · Π factors`, each factor an integer polynomial low to high.
fn factored(num: i64, den: i64, factors: &[&[i64]]) -> PolynomialInP {
    let prod = factors
        .iter()
        .fold(IntPoly::one(), |acc, f| &acc * &IntPoly::from_i64s(f));
    PolynomialInP::new(prod.to_rat().scale(&ExactRat::new(num.into(), den.into())))
}

/// The published closed forms for `K_1..K_6` and `M_1..M_3`, expanded.
pub fn published_formulas() -> Vec<(Theory, usize, PolynomialInP)> {
    const P2M1: &[i64] = &[-1, 0, 1];
    vec![
        (Theory::Complex, 1, factored(1, 2, &[&[-1, 1]])),
        (Theory::Complex, 2, factored(-1, 12, &[P2M1])),
        (Theory::Complex, 3, factored(1, 24, &[P2M1])),
        (Theory::Complex, 4, factored(1, 720, &[P2M1, &[-19, 0, 1]])),
        (Theory::Complex, 5, factored(-1, 480, &[P2M1, &[-9, 0, 1]])),
        (
            Theory::Complex,
            6,
            factored(
                -1,
                60480,
                &[&[-1, 1], &[15263, -17617, 8375, -1825, 122, 2]],
            ),
        ),
        (Theory::Real, 1, factored(1, 24, &[P2M1])),
        (Theory::Real, 2, factored(-1, 5760, &[P2M1, &[17, 0, 7]])),
        (
            Theory::Real,
            3,
            factored(1, 322560, &[P2M1, &[169, 0, -34, 0, 57]]),
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub theory: Theory,
    pub n: usize,
    pub computed: PolynomialInP,
    pub published: PolynomialInP,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.computed == self.published
    }
}

/// Computed formulas next to the published ones, compared in expanded form.
pub fn published_table_check() -> Vec<TableRow> {
    let ks = k_formulas(6);
    let ms = m_formulas(3);
    published_formulas()
        .into_iter()
        .map(|(theory, n, published)| {
            let computed = match theory {
                Theory::Complex => ks[n].formula.clone(),
                Theory::Real => ms[n].formula.clone(),
            };
            TableRow {
                theory,
                n,
                computed,
                published,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectMismatch {
    pub p: OddPrime,
    pub n: usize,
    pub formula_value: ExactRat,
    pub direct: ExactInt,
}

/// Informational record of a formula evaluated below its threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelowThreshold {
    pub p: OddPrime,
    pub n: usize,
    pub formula_value: ExactRat,
    pub direct: ExactInt,
}

impl BelowThreshold {
    pub fn integral(&self) -> bool {
        self.formula_value.is_integer()
    }

    pub fn agrees(&self) -> bool {
        rat_to_int(&self.formula_value).as_ref() == Some(&self.direct)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectScanReport {
    pub checked: usize,
    pub mismatches: Vec<DirectMismatch>,
    pub below_threshold: Vec<BelowThreshold>,
}

impl DirectScanReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Evaluates every formula `n <= n_max` at every odd prime `p <= p_max` and
/// compares with the directly computed series coefficient.
pub fn formula_vs_direct_scan(
    theory: Theory,
    n_max: usize,
    p_max: u64,
) -> Result<DirectScanReport> {
    let entries = formulas(theory, n_max);
    let mut report = DirectScanReport::default();
    for p in odd_primes_between(3, p_max) {
        let series = theory.base_series(p, n_max + 1)?;
        for entry in &entries {
            let direct = series.coeff(entry.n).clone();
            let value = entry.eval(p);
            if entry.applies_to(p) {
                report.checked += 1;
                if rat_to_int(&value).as_ref() != Some(&direct) {
                    report.mismatches.push(DirectMismatch {
                        p,
                        n: entry.n,
                        formula_value: value,
                        direct,
                    });
                }
            } else {
                report.below_threshold.push(BelowThreshold {
                    p,
                    n: entry.n,
                    formula_value: value,
                    direct,
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliValue {
    pub n: usize,
    #[serde(serialize_with = "ser_rat")]
    pub value: ExactRat,
}

fn ser_rat<S: serde::Serializer>(r: &ExactRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `-n! · [p^n] K_n(p)`.
pub fn bernoulli_from_formula(entry: &FormulaEntry) -> BernoulliValue {
    let n = entry.n;
    let lead = entry.formula.coeff(n);
    let value = -lead * ExactRat::from_integer(factorial(n as u64));
    BernoulliValue { n, value }
}

pub fn bernoulli_from_k(n: usize) -> BernoulliValue {
    bernoulli_from_formula(&k_formula(n))
}

/// `B_1 .. B_{n_max}` from a single series inversion.
pub fn bernoulli_from_k_upto(n_max: usize) -> Vec<BernoulliValue> {
    k_formulas(n_max)
        .iter()
        .skip(1)
        .map(bernoulli_from_formula)
        .collect()
}

/// `B_n` from `Σ_{k=0}^{m} C(m+1,k) B_k = 0`, `B_0 = 1` (so `B_1 = -1/2`).
pub fn bernoulli_oracle(n: usize) -> BernoulliValue {
    let mut b: Vec<ExactRat> = vec![ExactRat::one()];
    for m in 1..=n {
        let m1 = ExactInt::from(m as u64 + 1);
        let sum = (0..m).fold(ExactRat::zero(), |acc, k| {
            acc + ExactRat::from_integer(binomial(&m1, k as u64)) * &b[k]
        });
        b.push(-sum / ExactRat::from_integer(m1));
    }
    BernoulliValue {
        n,
        value: b.swap_remove(n),
    }
}

/// Degree of `K_n(p)`; `n` exactly when the Bernoulli number is nonzero.
pub fn k_formula_degree(n: usize) -> Option<usize> {
    k_formula(n).formula.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRat {
        ExactRat::new(n.into(), d.into())
    }

    #[test]
    fn binomials_in_p() {
        assert_eq!(binomial_in_p(1), PolynomialInP::p());
        assert_eq!(
            binomial_in_p(2),
            PolynomialInP::from_fracs(&[(0, 1), (-1, 2), (1, 2)])
        );
        assert_eq!(binomial_in_p(3).eval_u64(7), rat(35, 1));
    }

    #[test]
    fn low_formulas() {
        assert_eq!(k_formula(0).formula, PolynomialInP::constant(rat(-1, 1)));
        assert_eq!(
            k_formula(1).formula,
            PolynomialInP::from_fracs(&[(-1, 2), (1, 2)])
        );
        assert_eq!(
            k_formula(4).formula,
            factored(1, 720, &[&[-1, 0, 1], &[-19, 0, 1]])
        );
        assert_eq!(m_formula(0).formula, PolynomialInP::constant(rat(-1, 1)));
        assert_eq!(m_formula(1).formula, factored(1, 24, &[&[-1, 0, 1]]));
        assert_eq!(
            m_formula(2).formula,
            factored(-1, 5760, &[&[-1, 0, 1], &[17, 0, 7]])
        );
    }

    #[test]
    fn sixth_and_third_formulas() {
        // Derived independently by symbolic expansion of the defining quotients.
        assert_eq!(
            k_formula(6).formula,
            factored(-1, 60480, &[&[-1, 0, 1], &[863, 0, -145, 0, 2]])
        );
        assert_eq!(
            m_formula(3).formula,
            factored(1, 967680, &[&[-1, 0, 1], &[367, 0, 178, 0, 31]])
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(k_formula(1).min_valid_p, 3);
        assert_eq!(k_formula(6).min_valid_p, 8);
        assert_eq!(k_formula(0).min_valid_p, 0);
        assert_eq!(m_formula(3).min_valid_p, 9);
    }

    #[test]
    fn below_threshold_example() {
        let k4 = k_formula(4);
        let five = OddPrime::new(5).unwrap();
        assert!(!k4.applies_to(five));
        assert_eq!(k4.eval(five), rat(1, 5));
        assert_eq!(
            crate::reduction::k_series(five, 5).unwrap().coeff(4),
            &ExactInt::zero()
        );
    }

    #[test]
    fn bernoulli_oracle_values() {
        assert_eq!(bernoulli_oracle(0).value, rat(1, 1));
        assert_eq!(bernoulli_oracle(1).value, rat(-1, 2));
        assert_eq!(bernoulli_oracle(6).value, rat(1, 42));
        assert_eq!(bernoulli_oracle(5).value, rat(0, 1));
        assert_eq!(bernoulli_oracle(12).value, rat(-691, 2730));
    }

    #[test]
    fn bernoulli_from_leading_coefficients() {
        assert_eq!(bernoulli_from_k(2).value, rat(1, 6));
        assert_eq!(bernoulli_from_k(4).value, rat(-1, 30));
        assert_eq!(bernoulli_from_k(3).value, rat(0, 1));
        assert!(k_formula_degree(3).unwrap() < 3);
        for (b, n) in bernoulli_from_k_upto(12).iter().zip(1..) {
            assert_eq!(b.n, n);
            assert_eq!(b.value, bernoulli_oracle(n).value, "n = {n}");
        }
    }

    #[test]
    fn degrees_track_bernoulli() {
        for n in 1..=12 {
            let deg = k_formula_degree(n).unwrap();
            assert!(deg <= n);
            let nonzero = !bernoulli_oracle(n).value.is_zero();
            assert_eq!(deg == n, nonzero, "n = {n}");
        }
    }

    #[test]
    fn formula_independent_of_extra_order() {
        let short = k_formulas(5);
        let long = k_formulas(11);
        assert_eq!(short[..], long[..6]);
    }
}
