//! Structured verdicts for identity and theorem checks.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// All hypotheses held and every conclusion check passed.
    Consistent,
    /// All hypotheses held but a conclusion failed. This points at a bug in
    /// the engine, never at the theorem.
    Inconsistent,
    /// Some hypothesis failed, so the conclusions are informational only.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// One hypothesis and the window it was checked on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub scope: String,
    pub holds: bool,
}

/// One conclusion check with a human-readable detail line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusions: Vec<Check>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        TheoremReport {
            theorem: theorem.into(),
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            verdict: Verdict::Consistent,
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, name: impl Into<String>, scope: impl Into<String>, holds: bool) {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            scope: scope.into(),
            holds,
        });
        self.refresh();
    }

    pub fn check(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.conclusions.push(Check {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
        self.refresh();
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusions.iter().all(|c| c.holds)
    }

    /// Look up a conclusion by name.
    pub fn conclusion(&self, name: &str) -> Option<&Check> {
        self.conclusions.iter().find(|c| c.name == name)
    }

    fn refresh(&mut self) {
        self.verdict = if !self.hypotheses_hold() {
            Verdict::NotApplicable
        } else if self.conclusions_hold() {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        };
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.theorem, self.verdict)?;
        for h in &self.hypotheses {
            let mark = if h.holds { "holds" } else { "fails" };
            writeln!(f, "  hypothesis  {:<44} {mark}  [{}]", h.name, h.scope)?;
        }
        for c in &self.conclusions {
            let mark = if c.holds { "ok" } else { "FAIL" };
            writeln!(f, "  check       {:<44} {mark}  {}", c.name, c.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
