//! Check reports shared by the checkers, the theorem suites and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// What was established, or why the check was skipped.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Concrete counterexample for a failure: basis tuple or parameter point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// `p != 0` conditions under which a generic verdict holds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub locus: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub title: String,
    pub checks: Vec<Check>,
    /// Hypotheses the algebra-level computation cannot see.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl StructureReport {
    pub fn new(title: impl Into<String>) -> Self {
        StructureReport {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            verdict: Verdict::Pass,
            detail: detail.into(),
            witness: None,
            locus: Vec::new(),
        })
    }

    /// Records a failure; a witness is mandatory.
    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            verdict: Verdict::Fail,
            detail: String::new(),
            witness: Some(witness.into()),
            locus: Vec::new(),
        })
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            verdict: Verdict::Skipped,
            detail: reason.into(),
            witness: None,
            locus: Vec::new(),
        })
    }

    /// Pass with `detail` if `ok`, otherwise fail with the lazily built witness.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
        witness: impl FnOnce() -> String,
    ) -> &mut Check {
        if ok {
            self.pass(name, detail)
        } else {
            self.fail(name, witness())
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn push(&mut self, c: Check) -> &mut Check {
        self.checks.push(c);
        self.checks.last_mut().unwrap()
    }

    pub fn extend(&mut self, other: StructureReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl Check {
    pub fn with_locus(&mut self, locus: Vec<String>) -> &mut Self {
        self.locus = locus;
        self
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            write!(f, "{:<7} {}", c.verdict.to_string(), c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "        witness: {w}")?;
            }
            if !c.locus.is_empty() {
                writeln!(f, "        where: {}", c.locus.join(", "))?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(
            f,
            "summary: {} passed, {} failed, {} skipped",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skipped)
        )
    }
}
