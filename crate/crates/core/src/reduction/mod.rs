//! The K and KO relations and their complete reductions.
//!
//! For the complex theory the generator is `μ` with relation `(1+μ)^p - 1`;
//! for the real theory it is `ω` with relation `w·f_p(w)`. A reduction writes
//! `p·X = Σ c_n X^(e+n)` with `e` the base exponent (`p`, resp. `(p+1)/2`);
//! it is complete when every `c_n` lies in `[-(p-1)/2, (p-1)/2]`.

mod engine;
mod relations;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{ExactInt, OddPrime};
use crate::poly_series::{IntPoly, TruncatedSeries};
use crate::Result;

pub use engine::{
    complete_reduce, exact_snapshot, ExactSnapshot, Reducer, ReductionSeries, SubstitutionMode,
};
pub use relations::{
    complex_denominator, complex_relation, f_polynomial, k_series, ko_denominator, ko_relation,
    ko_relation_expanded, m_series,
};
pub use verify::{
    certify_period, prefix_congruence_check, realification_check, verify_finite_identity,
    PeriodCertificate, RealificationOutcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    /// `K(BZ_p)`, generator `μ`.
    Complex,
    /// `KO(BZ_p)`, generator `ω`.
    Real,
}

impl Theory {
    pub const ALL: [Theory; 2] = [Theory::Complex, Theory::Real];

    pub fn base_exponent(self, p: OddPrime) -> usize {
        match self {
            Theory::Complex => p.as_usize(),
            Theory::Real => p.as_usize().div_ceil(2),
        }
    }

    /// How far ahead a rebalancing step at index `n` first writes.
    pub fn carry_shift(self, p: OddPrime) -> usize {
        self.base_exponent(p) - 1
    }

    /// The monic relation polynomial of the ring.
    pub fn relation(self, p: OddPrime) -> Result<IntPoly> {
        match self {
            Theory::Complex => Ok(complex_relation(p)),
            Theory::Real => ko_relation(p),
        }
    }

    /// `K_{p,n}` or `M_{p,n}` to `order` terms.
    pub fn base_series(self, p: OddPrime, order: usize) -> Result<TruncatedSeries<ExactInt>> {
        match self {
            Theory::Complex => k_series(p, order),
            Theory::Real => m_series(p, order),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::Complex => "complex",
            Theory::Real => "real",
        }
    }

    pub fn generator(self) -> &'static str {
        match self {
            Theory::Complex => "mu",
            Theory::Real => "omega",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "complex" | "k" | "K" => Ok(Theory::Complex),
            "real" | "ko" | "KO" => Ok(Theory::Real),
            _ => Err(format!("unknown theory {s:?} (expected complex or real)")),
        }
    }
}
