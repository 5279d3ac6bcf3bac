use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact_arith::{ExactInt, OddPrime};
use crate::reduction::{Reducer, SubstitutionMode, Theory};

const MAGIC: &str = "KREDSTATE 1";

/// A checkpoint of a [`Reducer`]: the working array (balanced prefix of
/// length `done`, then the raw tail up to `target`) plus its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanState {
    pub theory: Theory,
    pub p: OddPrime,
    pub mode: SubstitutionMode,
    pub target: usize,
    pub done: usize,
    pub coefficients: Vec<ExactInt>,
}

/// Writes to a sibling temporary file, then renames over `path`.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    let tmp = dir.join(name);
    let mut file = fs::File::create(&tmp)?;
    file.write_all(bytes)?;
    file.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::StateCorruption(msg.into())
}

impl ScanState {
    pub fn from_reducer(reducer: &Reducer) -> Self {
        ScanState {
            theory: reducer.theory(),
            p: reducer.p(),
            mode: reducer.mode(),
            target: reducer.target(),
            done: reducer.done(),
            coefficients: reducer.work().to_vec(),
        }
    }

    pub fn into_reducer(self) -> Result<Reducer> {
        Reducer::resume(self.theory, self.p, self.mode, self.coefficients, self.done)
    }

    /// Drops everything past `target`. The result is exactly the state a fresh
    /// run at that target would have after `min(done, target)` steps.
    pub fn truncated(mut self, target: usize) -> Self {
        if target < self.target {
            self.coefficients.truncate(target);
            self.target = target;
            self.done = self.done.min(target);
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut body = format!(
            "{MAGIC}\ntheory={} p={} mode={} target={} done={}\n",
            self.theory, self.p, self.mode, self.target, self.done
        );
        for c in &self.coefficients {
            body.push_str(&c.to_string());
            body.push('\n');
        }
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        body.push_str("sha256=");
        body.push_str(&digest);
        body.push('\n');
        body
    }

    pub fn parse(text: &str) -> Result<Self> {
        let body_end = text
            .trim_end_matches('\n')
            .rfind('\n')
            .map(|i| i + 1)
            .ok_or_else(|| corrupt("state file too short"))?;
        let (body, last) = text.split_at(body_end);
        let claimed = last
            .trim_end_matches('\n')
            .strip_prefix("sha256=")
            .ok_or_else(|| corrupt("missing sha256 line"))?;
        let actual = hex::encode(Sha256::digest(body.as_bytes()));
        if claimed != actual {
            return Err(corrupt(format!(
                "digest mismatch: file says {claimed}, content hashes to {actual}"
            )));
        }

        let mut lines = body.lines();
        if lines.next() != Some(MAGIC) {
            return Err(corrupt("missing KREDSTATE 1 header"));
        }
        let header = lines
            .next()
            .ok_or_else(|| corrupt("missing parameter line"))?;
        let mut fields = [None; 5];
        const KEYS: [&str; 5] = ["theory", "p", "mode", "target", "done"];
        for item in header.split(' ') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| corrupt(format!("bad field {item:?}")))?;
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| corrupt(format!("unknown key {key}")))?;
            fields[slot] = Some(value);
        }
        let [Some(theory), Some(p), Some(mode), Some(target), Some(done)] = fields else {
            return Err(corrupt("incomplete parameter line"));
        };
        let theory: Theory = theory.parse().map_err(corrupt)?;
        let mode: SubstitutionMode = mode.parse().map_err(corrupt)?;
        let p = p
            .parse::<u64>()
            .ok()
            .and_then(|v| OddPrime::new(v).ok())
            .ok_or_else(|| corrupt(format!("bad prime {p:?}")))?;
        let target: usize = target.parse().map_err(|_| corrupt("bad target"))?;
        let done: usize = done.parse().map_err(|_| corrupt("bad done"))?;

        let coefficients = lines
            .map(|l| {
                l.parse::<ExactInt>()
                    .map_err(|_| corrupt(format!("bad coefficient {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coefficients.len() != target {
            return Err(corrupt(format!(
                "{} coefficients for target {target}",
                coefficients.len()
            )));
        }
        if done > target {
            return Err(corrupt(format!("done {done} exceeds target {target}")));
        }
        Ok(ScanState {
            theory,
            p,
            mode,
            target,
            done,
            coefficients,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_text().as_bytes())
    }

    /// Fails unless the state belongs to the same computation.
    pub fn check_matches(&self, theory: Theory, p: OddPrime, mode: SubstitutionMode) -> Result<()> {
        if (self.theory, self.p, self.mode) != (theory, p, mode) {
            return Err(Error::StateMismatch(format!(
                "state is for {} p={} mode={}, requested {theory} p={p} mode={mode}",
                self.theory, self.p, self.mode
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ScanState {
        let p = OddPrime::new(7).unwrap();
        let mut r = Reducer::new(Theory::Complex, p, 30, SubstitutionMode::SelfSnapshot).unwrap();
        r.run_to(11);
        ScanState::from_reducer(&r)
    }

    #[test]
    fn text_round_trip() {
        let s = sample();
        let text = s.to_text();
        assert!(
            text.starts_with("KREDSTATE 1\ntheory=complex p=7 mode=self target=30 done=11\n-1\n")
        );
        assert_eq!(ScanState::parse(&text).unwrap(), s);
    }

    #[test]
    fn tampering_is_detected() {
        let text = sample().to_text();
        let flipped = text.replacen("\n-1\n", "\n1\n", 1);
        assert!(matches!(
            ScanState::parse(&flipped),
            Err(Error::StateCorruption(_))
        ));
        let cut = &text[..text.len() / 2];
        assert!(matches!(
            ScanState::parse(cut),
            Err(Error::StateCorruption(_))
        ));
        assert!(matches!(
            ScanState::parse(""),
            Err(Error::StateCorruption(_))
        ));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested").join("s.kred");
        let s = sample();
        s.save(&path).unwrap();
        assert_eq!(ScanState::load(&path).unwrap(), s);
        assert!(!dir.path().join("nested").join("s.kred.tmp").exists());
    }

    #[test]
    fn truncation_matches_fresh_run() {
        let p = OddPrime::new(7).unwrap();
        let mut fresh =
            Reducer::new(Theory::Complex, p, 20, SubstitutionMode::SelfSnapshot).unwrap();
        fresh.run_to(11);
        assert_eq!(sample().truncated(20), ScanState::from_reducer(&fresh));
    }

    #[test]
    fn mismatch() {
        let s = sample();
        assert!(s
            .check_matches(
                Theory::Complex,
                OddPrime::new(7).unwrap(),
                SubstitutionMode::SelfSnapshot
            )
            .is_ok());
        let err = s.check_matches(
            Theory::Real,
            OddPrime::new(7).unwrap(),
            SubstitutionMode::SelfSnapshot,
        );
        assert!(matches!(err, Err(Error::StateMismatch(_))));
    }
}
