use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Theory;
use crate::error::{Error, Result};
use crate::exact_arith::{abs_le, balanced_residue, exact_div, ExactInt, OddPrime};

/// Which expansion of `p·X` a carry is multiplied by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstitutionMode {
    /// The working array itself, as it stood before the current step.
    #[default]
    #[serde(rename = "self")]
    SelfSnapshot,
    /// The unreduced `K_{p,n}` / `M_{p,n}` series.
    #[serde(rename = "base")]
    BaseSeries,
}

impl SubstitutionMode {
    pub fn name(self) -> &'static str {
        match self {
            SubstitutionMode::SelfSnapshot => "self",
            SubstitutionMode::BaseSeries => "base",
        }
    }
}

impl fmt::Display for SubstitutionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubstitutionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "self" => Ok(SubstitutionMode::SelfSnapshot),
            "base" => Ok(SubstitutionMode::BaseSeries),
            _ => Err(format!(
                "unknown substitution mode {s:?} (expected self or base)"
            )),
        }
    }
}

/// `p·X = Σ c_n X^(base_exponent + n)`, with `c_n` balanced for `n < balanced_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSeries {
    pub theory: Theory,
    pub p: OddPrime,
    pub base_exponent: usize,
    pub mode: SubstitutionMode,
    pub coefficients: Vec<ExactInt>,
    pub balanced_len: usize,
}

impl ReductionSeries {
    pub fn balanced(&self) -> &[ExactInt] {
        &self.coefficients[..self.balanced_len]
    }

    pub fn raw_tail(&self) -> &[ExactInt] {
        &self.coefficients[self.balanced_len..]
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// The balanced prefix as machine integers (always fits: `|c| <= (p-1)/2`).
    pub fn balanced_i64(&self) -> Vec<i64> {
        self.balanced()
            .iter()
            .map(|c| i64::try_from(c).expect("balanced coefficient"))
            .collect()
    }
}

/// Left-to-right balanced rewriting of a truncated working array.
///
/// Index `n` is final once step `n` ran: every carry from step `n` lands at
/// `n + d + m >= n + 1` with `d = base_exponent - 1 >= 1`.
#[derive(Clone, Debug)]
pub struct Reducer {
    theory: Theory,
    p: OddPrime,
    mode: SubstitutionMode,
    shift: usize,
    base: Option<Vec<ExactInt>>,
    work: Vec<ExactInt>,
    done: usize,
}

impl Reducer {
    pub fn new(theory: Theory, p: OddPrime, target: usize, mode: SubstitutionMode) -> Result<Self> {
        let series = theory.base_series(p, target)?.into_coeffs();
        let base = (mode == SubstitutionMode::BaseSeries).then(|| series.clone());
        Ok(Reducer {
            theory,
            p,
            mode,
            shift: theory.carry_shift(p),
            base,
            work: series,
            done: 0,
        })
    }

    /// Rebuilds a reducer from a saved working array with `done` steps applied.
    pub fn resume(
        theory: Theory,
        p: OddPrime,
        mode: SubstitutionMode,
        work: Vec<ExactInt>,
        done: usize,
    ) -> Result<Self> {
        if work.is_empty() {
            return Err(Error::EmptyOrder);
        }
        if done > work.len() {
            return Err(Error::StateCorruption(format!(
                "{done} balanced entries claimed in an array of {}",
                work.len()
            )));
        }
        if let Some(bad) = work[..done].iter().position(|c| !abs_le(c, p.half())) {
            return Err(Error::StateCorruption(format!(
                "entry {bad} of the balanced prefix is not balanced"
            )));
        }
        let base = match mode {
            SubstitutionMode::SelfSnapshot => None,
            SubstitutionMode::BaseSeries => Some(theory.base_series(p, work.len())?.into_coeffs()),
        };
        Ok(Reducer {
            theory,
            p,
            mode,
            shift: theory.carry_shift(p),
            base,
            work,
            done,
        })
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn mode(&self) -> SubstitutionMode {
        self.mode
    }

    pub fn target(&self) -> usize {
        self.work.len()
    }

    pub fn done(&self) -> usize {
        self.done
    }

    pub fn is_finished(&self) -> bool {
        self.done == self.work.len()
    }

    /// Balanced prefix followed by the raw (not yet balanced) tail.
    pub fn work(&self) -> &[ExactInt] {
        &self.work
    }

    /// Balances the next index. Returns false once everything is balanced.
    pub fn step(&mut self) -> bool {
        let n = self.done;
        let target = self.work.len();
        if n >= target {
            return false;
        }
        let (r, q) = balanced_residue(&self.work[n], self.p);
        let start = n + self.shift;
        if !q.is_zero() && start < target {
            let len = target - start;
            match &self.base {
                None => {
                    // Descending m reads only entries this loop has not
                    // written yet, including the unbalanced c_n.
                    for m in (0..len).rev() {
                        if self.work[m].is_zero() {
                            continue;
                        }
                        let carry = &q * &self.work[m];
                        self.work[start + m] += carry;
                    }
                }
                Some(base) => {
                    for (m, s) in base[..len].iter().enumerate() {
                        if !s.is_zero() {
                            self.work[start + m] += &q * s;
                        }
                    }
                }
            }
        }
        self.work[n] = r;
        self.done += 1;
        true
    }

    /// Runs until `n` indices are balanced (or the target is reached).
    pub fn run_to(&mut self, n: usize) {
        while self.done < n.min(self.work.len()) {
            self.step();
        }
    }

    pub fn run(&mut self) {
        self.run_to(self.work.len());
    }

    pub fn snapshot(&self) -> ReductionSeries {
        ReductionSeries {
            theory: self.theory,
            p: self.p,
            base_exponent: self.theory.base_exponent(self.p),
            mode: self.mode,
            coefficients: self.work.clone(),
            balanced_len: self.done,
        }
    }

    pub fn into_series(self) -> ReductionSeries {
        ReductionSeries {
            theory: self.theory,
            p: self.p,
            base_exponent: self.theory.base_exponent(self.p),
            mode: self.mode,
            coefficients: self.work,
            balanced_len: self.done,
        }
    }
}

/// The first `order` coefficients of the complete reduction.
pub fn complete_reduce(
    theory: Theory,
    p: OddPrime,
    order: usize,
    mode: SubstitutionMode,
) -> Result<ReductionSeries> {
    let mut reducer = Reducer::new(theory, p, order, mode)?;
    reducer.run();
    Ok(reducer.into_series())
}

/// A finite exact identity `p·X = Σ coefficient·X^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSnapshot {
    pub theory: Theory,
    pub p: OddPrime,
    pub base_exponent: usize,
    /// Balanced coefficients of `X^(base_exponent + n)`.
    pub balanced: Vec<ExactInt>,
    /// Remaining nonzero terms `(exponent, coefficient)` above the prefix.
    pub tail: Vec<(usize, ExactInt)>,
}

impl ExactSnapshot {
    pub fn terms(&self) -> Vec<(usize, ExactInt)> {
        let mut terms: Vec<(usize, ExactInt)> = self
            .balanced
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (self.base_exponent + n, c.clone()))
            .collect();
        terms.extend(self.tail.iter().cloned());
        terms
    }
}

/// Balances `n_stop` coefficients without truncation.
///
/// Starts from the relation itself, `p·X = -Σ_{k>=2} r_k X^k`, clears the
/// exponents below the base exponent by substituting `p·X` (every such
/// coefficient is a multiple of `p`), then balances left to right with the
/// same substitution. The result is an exact finite identity in the ring.
pub fn exact_snapshot(theory: Theory, p: OddPrime, n_stop: usize) -> Result<ExactSnapshot> {
    let relation = theory.relation(p)?;
    let e = theory.base_exponent(p);
    let pb = p.to_bigint();
    let higher: Vec<(usize, ExactInt)> = (2..=e)
        .map(|k| (k, relation.coeff(k)))
        .filter(|(_, c)| !c.is_zero())
        .collect();

    let mut w = vec![ExactInt::zero(); e + n_stop + e];
    for (k, c) in &higher {
        w[*k] -= c;
    }
    // q·p·X^at = q·X^(at-1)·(p·X)
    let substitute = |w: &mut Vec<ExactInt>, at: usize, q: &ExactInt| {
        for (k, c) in &higher {
            let idx = at - 1 + k;
            if idx >= w.len() {
                w.resize(idx + 1, ExactInt::zero());
            }
            w[idx] -= q * c;
        }
    };

    for k in 2..e {
        let c = std::mem::take(&mut w[k]);
        if c.is_zero() {
            continue;
        }
        let q = exact_div(&c, &pb).ok_or_else(|| {
            Error::IntegralityViolation(format!(
                "coefficient {c} of X^{k} is not a multiple of {p}"
            ))
        })?;
        substitute(&mut w, k, &q);
    }
    for n in 0..n_stop {
        let at = e + n;
        let (r, q) = balanced_residue(&w[at], p);
        w[at] = r;
        if !q.is_zero() {
            substitute(&mut w, at, &q);
        }
    }

    let balanced = w[e..e + n_stop].to_vec();
    let tail = w
        .iter()
        .enumerate()
        .skip(e + n_stop)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    Ok(ExactSnapshot {
        theory,
        p,
        base_exponent: e,
        balanced,
        tail,
    })
}
