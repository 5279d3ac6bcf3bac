use std::path::Path;

use rayon::prelude::*;

use super::state::write_atomic;
use super::{DetectionMargin, PeriodReport, ScanState};
use crate::error::Result;
use crate::exact_arith::OddPrime;
use crate::reduction::{Reducer, SubstitutionMode, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub mode: SubstitutionMode,
    /// Largest period tried; `None` means as large as the margin allows.
    pub max_period: Option<usize>,
    pub margin: DetectionMargin,
    /// Steps between checkpoints when a state file is in use.
    pub checkpoint_every: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            mode: SubstitutionMode::SelfSnapshot,
            max_period: None,
            margin: DetectionMargin::default(),
            checkpoint_every: 1000,
        }
    }
}

pub fn state_file_name(theory: Theory, p: OddPrime) -> String {
    format!("{theory}-p{p}.kredstate")
}

fn report_file_name(theory: Theory, p: OddPrime) -> String {
    format!("{theory}-p{p}.report")
}

/// Loads the reducer from `state` when possible, otherwise starts fresh, then
/// balances up to `max_steps` more indices (all remaining when `None`),
/// checkpointing along the way.
///
/// A saved state with a target at least `target` is cut down and resumed; a
/// smaller one cannot be extended and is discarded.
pub fn advance_state(
    theory: Theory,
    p: OddPrime,
    target: usize,
    mode: SubstitutionMode,
    state: Option<&Path>,
    checkpoint_every: usize,
    max_steps: Option<usize>,
) -> Result<Reducer> {
    let saved = match state {
        Some(path) if path.exists() => {
            let s = ScanState::load(path)?;
            s.check_matches(theory, p, mode)?;
            (s.target >= target).then_some(s)
        }
        _ => None,
    };
    let mut reducer = match saved {
        Some(s) => s.truncated(target).into_reducer()?,
        None => Reducer::new(theory, p, target, mode)?,
    };

    let stop = max_steps.map_or(target, |m| reducer.done().saturating_add(m).min(target));
    let chunk = checkpoint_every.max(1);
    loop {
        let next = reducer.done().saturating_add(chunk).min(stop);
        reducer.run_to(next);
        if let Some(path) = state {
            ScanState::from_reducer(&reducer).save(path)?;
        }
        if reducer.done() >= stop {
            break;
        }
    }
    Ok(reducer)
}

/// Reduces one prime to `n` terms (resuming from `state` if given), then
/// detects and certifies.
pub fn scan_prime(
    theory: Theory,
    p: OddPrime,
    n: usize,
    state: Option<&Path>,
    config: &ScanConfig,
) -> Result<PeriodReport> {
    let reducer = advance_state(
        theory,
        p,
        n,
        config.mode,
        state,
        config.checkpoint_every,
        None,
    )?;
    let series = reducer.into_series();
    Ok(PeriodReport::analyze(
        theory,
        p,
        config.mode,
        series.balanced(),
        config.max_period.unwrap_or(n),
        config.margin,
    ))
}

pub fn scan(
    theory: Theory,
    primes: &[OddPrime],
    n: usize,
    out_dir: &Path,
) -> Result<Vec<PeriodReport>> {
    scan_with(theory, primes, n, out_dir, &ScanConfig::default())
}

/// Scans every prime in parallel, each with its own state file under
/// `out_dir`, and writes one report file per prime. Reports come back in the
/// order of `primes`.
pub fn scan_with(
    theory: Theory,
    primes: &[OddPrime],
    n: usize,
    out_dir: &Path,
    config: &ScanConfig,
) -> Result<Vec<PeriodReport>> {
    std::fs::create_dir_all(out_dir)?;
    primes
        .par_iter()
        .map(|&p| {
            let state = out_dir.join(state_file_name(theory, p));
            let report = scan_prime(theory, p, n, Some(&state), config)?;
            write_atomic(
                &out_dir.join(report_file_name(theory, p)),
                report.render().as_bytes(),
            )?;
            Ok(report)
        })
        .collect()
}
