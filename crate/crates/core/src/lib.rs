//! Complete reductions of the Hopf bundle relations in `K(BZ_p)` and
//! `KO(BZ_p)` for odd primes `p`.
//!
//! The library is exact throughout: big integers, normalized rationals and
//! polynomials over them. No floating point value reaches any result.
//!
//! - [`exact_arith`]: integers, rationals, primality, the balanced residue.
//! - [`poly_series`]: dense polynomials, Laurent polynomials, truncated series.
//! - [`reduction`]: the two ring relations, the `K_{p,n}` / `M_{p,n}`
//!   sequences, the balanced rewrite engine and exact identity checks.
//! - [`formulas`]: `K_n(p)`, `M_n(p)` as polynomials in `p`, and Bernoulli
//!   numbers read off their leading coefficients.
//! - [`periodicity`]: period detection, certification and resumable scans.

pub mod error;
pub mod exact_arith;
pub mod formulas;
pub mod periodicity;
pub mod poly_series;
pub mod reduction;
pub mod reference;

pub use error::{Error, Result};
