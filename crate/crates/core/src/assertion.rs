//! Named checks collected into transcripts and reports.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Verified by computation.
    Check,
    /// A known result quoted rather than recomputed.
    CitedFact,
    Note,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    /// Short description of the statement being verified.
    pub anchor: String,
    pub kind: Kind,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Assertion {
    pub fn check(name: impl Into<String>, anchor: impl Into<String>, passed: bool, witness: Option<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), kind: Kind::Check, passed, witness }
    }

    pub fn cited(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), kind: Kind::CitedFact, passed: true, witness: None }
    }

    pub fn note(name: impl Into<String>, anchor: impl Into<String>, text: impl Into<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), kind: Kind::Note, passed: true, witness: Some(text.into()) }
    }

    pub fn line(&self) -> String {
        let status = match (self.kind, self.passed) {
            (Kind::CitedFact, _) => "CITED",
            (Kind::Note, _) => "NOTE",
            (Kind::Check, true) => "PASS",
            (Kind::Check, false) => "FAIL",
        };
        match &self.witness {
            Some(w) => format!("[{status}] {} ({}): {w}", self.name, self.anchor),
            None => format!("[{status}] {} ({})", self.name, self.anchor),
        }
    }
}

pub fn all_passed(list: &[Assertion]) -> bool {
    list.iter().all(|a| a.passed)
}
