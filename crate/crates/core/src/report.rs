//! Check reports shared by the property suites and the CLI.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Recorded for the reader; never affects the overall outcome.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: String,
    pub verdict: Verdict,
    /// The statement being checked, in words.
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check. An `Err` carries the witness of the failure.
    pub fn check(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        outcome: Result<(), String>,
    ) {
        let (verdict, witness) = match outcome {
            Ok(()) => (Verdict::Pass, None),
            Err(w) => (Verdict::Fail, Some(w)),
        };
        self.entries.push(Entry {
            id: id.into(),
            verdict,
            anchor: anchor.into(),
            witness,
            detail: None,
        });
    }

    /// Like [`Report::check`] with an explanatory note on the entry.
    pub fn check_with(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        outcome: Result<(), String>,
        detail: impl Into<String>,
    ) {
        self.check(id, anchor, outcome);
        self.entries.last_mut().expect("just pushed").detail = Some(detail.into());
    }

    pub fn info(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.entries.push(Entry {
            id: id.into(),
            verdict: Verdict::Info,
            anchor: anchor.into(),
            witness: None,
            detail: Some(detail.into()),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Prefixes every entry id with `scope/`.
    pub fn scoped(mut self, scope: &str) -> Self {
        for e in &mut self.entries {
            e.id = format!("{scope}/{}", e.id);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == verdict).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let tag = match e.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Info => "INFO",
            };
            write!(f, "[{tag}] {}: {}", e.id, e.anchor)?;
            if let Some(d) = &e.detail {
                write!(f, " ({d})")?;
            }
            if let Some(w) = &e.witness {
                write!(f, "\n       witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} passed, {} failed, {} info",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Info)
        )
    }
}

/// `Ok(())` when `cond` holds, else the lazily built witness.
pub fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_carry_witnesses_and_info_never_fails() {
        let mut r = Report::new();
        r.check("a", "always", Ok(()));
        r.info("b", "note", "hello");
        assert!(r.passed());
        r.check("c", "never", Err("x = 1".into()));
        assert!(!r.passed());
        let f: Vec<_> = r.failures().collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].witness.as_deref(), Some("x = 1"));
        let text = r.to_string();
        assert!(text.ends_with("1 passed, 1 failed, 1 info"));
    }
}
