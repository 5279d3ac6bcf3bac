//! Eventual-period detection on balanced streams and resumable scans.
//!
//! Detection is purely syntactic: it reports what a finite window shows.
//! A found period becomes a theorem only once [`certify_period`] proves the
//! corresponding closed identity in the ring.
//!
//! [`certify_period`]: crate::reduction::certify_period

mod scan;
mod state;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{ExactInt, OddPrime};
use crate::reduction::{certify_period, PeriodCertificate, SubstitutionMode, Theory};

pub use scan::{advance_state, scan, scan_prime, scan_with, state_file_name, ScanConfig};
pub use state::ScanState;

/// A candidate period `t` must hold on at least `max(min_cycles·t, t + min_extra)`
/// terms after the preperiod.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectionMargin {
    pub min_cycles: usize,
    pub min_extra: usize,
}

impl Default for DetectionMargin {
    fn default() -> Self {
        DetectionMargin {
            min_cycles: 3,
            min_extra: 64,
        }
    }
}

impl DetectionMargin {
    pub fn required(&self, period: usize) -> usize {
        (self.min_cycles * period).max(period + self.min_extra)
    }

    /// Largest period that could pass in a window of `len` terms.
    pub fn max_feasible_period(&self, len: usize) -> usize {
        (1..=len)
            .take_while(|&t| len - t >= self.required(t))
            .last()
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Detection {
    Found {
        preperiod: usize,
        period: usize,
        confirmed_length: usize,
    },
    NotFound,
}

impl Detection {
    pub fn is_found(&self) -> bool {
        matches!(self, Detection::Found { .. })
    }

    pub fn preperiod_and_period(&self) -> Option<(usize, usize)> {
        match *self {
            Detection::Found {
                preperiod, period, ..
            } => Some((preperiod, period)),
            Detection::NotFound => None,
        }
    }
}

/// Smallest `s` with `seq[n + t] == seq[n]` for all `s <= n < len - t`.
fn shortest_preperiod<T: PartialEq>(seq: &[T], t: usize) -> usize {
    let mut n = seq.len() - t;
    while n > 0 && seq[n - 1] == seq[n - 1 + t] {
        n -= 1;
    }
    n
}

/// [`detect_with_margin`] with the default margin.
pub fn detect_eventual_period<T: PartialEq>(seq: &[T], max_period: usize) -> Detection {
    detect_with_margin(seq, max_period, DetectionMargin::default())
}

/// The smallest period `t <= max_period` whose confirmed length
/// `len - t - s` meets the margin, with `s` minimal for that `t`.
pub fn detect_with_margin<T: PartialEq>(
    seq: &[T],
    max_period: usize,
    margin: DetectionMargin,
) -> Detection {
    let len = seq.len();
    let t_max = max_period.min(margin.max_feasible_period(len));
    for t in 1..=t_max {
        let s = shortest_preperiod(seq, t);
        let confirmed = len - t - s;
        if confirmed >= margin.required(t) {
            return Detection::Found {
                preperiod: s,
                period: t,
                confirmed_length: confirmed,
            };
        }
    }
    Detection::NotFound
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateStatus {
    Proved,
    Unproved,
    NotAttempted,
}

impl CertificateStatus {
    pub fn name(self) -> &'static str {
        match self {
            CertificateStatus::Proved => "PROVED",
            CertificateStatus::Unproved => "UNPROVED",
            CertificateStatus::NotAttempted => "NOT_ATTEMPTED",
        }
    }
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub theory: Theory,
    pub p: OddPrime,
    pub mode: SubstitutionMode,
    pub window: usize,
    pub outcome: Detection,
    pub certificate: CertificateStatus,
    /// Empty unless the outcome is `Found`.
    pub preperiod_digits: Vec<ExactInt>,
    pub cycle_digits: Vec<ExactInt>,
}

impl PeriodReport {
    /// Detects on `balanced` and, for a found candidate, tries to certify it.
    pub fn analyze(
        theory: Theory,
        p: OddPrime,
        mode: SubstitutionMode,
        balanced: &[ExactInt],
        max_period: usize,
        margin: DetectionMargin,
    ) -> Self {
        let outcome = detect_with_margin(balanced, max_period, margin);
        let (preperiod_digits, cycle_digits, certificate) = match outcome.preperiod_and_period() {
            Some((s, t)) => {
                let pre = balanced[..s].to_vec();
                let cyc = balanced[s..s + t].to_vec();
                let cert = PeriodCertificate::new(theory, p, pre.clone(), cyc.clone());
                let status = if certify_period(&cert) {
                    CertificateStatus::Proved
                } else {
                    CertificateStatus::Unproved
                };
                (pre, cyc, status)
            }
            None => (Vec::new(), Vec::new(), CertificateStatus::NotAttempted),
        };
        PeriodReport {
            theory,
            p,
            mode,
            window: balanced.len(),
            outcome,
            certificate,
            preperiod_digits,
            cycle_digits,
        }
    }

    /// Canonical line-oriented rendering.
    pub fn render(&self) -> String {
        let join = |v: &[ExactInt]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let outcome = match self.outcome {
            Detection::Found {
                preperiod,
                period,
                confirmed_length,
            } => {
                format!("outcome=FOUND preperiod={preperiod} period={period} confirmed={confirmed_length}")
            }
            Detection::NotFound => "outcome=NOT_FOUND".to_string(),
        };
        format!(
            "theory={} p={} mode={} window={}\n{outcome}\ncertificate={}\npreperiod_digits={}\ncycle_digits={}\n",
            self.theory,
            self.p,
            self.mode,
            self.window,
            self.certificate,
            join(&self.preperiod_digits),
            join(&self.cycle_digits),
        )
    }
}

impl fmt::Display for PeriodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
