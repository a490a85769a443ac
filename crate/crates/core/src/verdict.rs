use serde::Serialize;

use crate::combinatorics::{Family, Params};

/// A pair of families realizing an optimum, in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl Witness {
    pub fn from_families(a: &Family, b: &Family) -> Self {
        Witness {
            a: a.iter().map(|s| s.to_text()).collect(),
            b: b.iter().map(|s| s.to_text()).collect(),
        }
    }
}

/// Result of comparing a closed-form value against an independently computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub params: Params,
    pub claim: String,
    pub formula_value: Option<u128>,
    pub oracle_value: Option<u128>,
    pub witness: Option<Witness>,
    pub findings: Vec<String>,
    pub pass: bool,
    pub millis: u128,
}

impl Verdict {
    pub fn new(params: &Params, claim: impl Into<String>) -> Self {
        Verdict {
            params: *params,
            claim: claim.into(),
            formula_value: None,
            oracle_value: None,
            witness: None,
            findings: Vec::new(),
            pass: true,
            millis: 0,
        }
    }

    /// Records a failed sub-check; the verdict no longer passes.
    pub fn fail(&mut self, finding: impl Into<String>) {
        self.pass = false;
        self.findings.push(finding.into());
    }

    pub fn note(&mut self, finding: impl Into<String>) {
        self.findings.push(finding.into());
    }
}
