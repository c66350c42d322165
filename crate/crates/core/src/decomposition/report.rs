use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A named hypothesis and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// A named claim, with a description of the first violating instance when
/// it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of verifying one claim. Maps are ordered so that serialized
/// reports are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub hypotheses: Vec<Check>,
    pub dimensions: BTreeMap<String, usize>,
    pub assertions: Vec<Assertion>,
    /// Computed values reported for inspection but not asserted.
    pub values: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(claim: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            hypotheses: Vec::new(),
            dimensions: BTreeMap::new(),
            assertions: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn hypothesis(&mut self, name: &str, pass: bool) -> &mut Self {
        self.hypotheses.push(Check { name: name.to_string(), pass });
        self
    }

    pub fn dim(&mut self, name: &str, value: usize) -> &mut Self {
        self.dimensions.insert(name.to_string(), value);
        self
    }

    pub fn value(&mut self, name: &str, value: String) -> &mut Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn assert(&mut self, name: &str, pass: bool) -> &mut Self {
        self.assertions.push(Assertion { name: name.to_string(), pass, witness: None });
        self
    }

    pub fn assert_witness(&mut self, name: &str, witness: Option<String>) -> &mut Self {
        self.assertions.push(Assertion { name: name.to_string(), pass: witness.is_none(), witness });
        self
    }

    pub fn verdict(&self) -> bool {
        self.hypotheses.iter().all(|h| h.pass) && self.assertions.iter().all(|a| a.pass)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    /// Turns a failing verdict into [`Error::ReportFail`] naming the first
    /// failed assertion.
    pub fn into_result(self) -> Result<Self> {
        if self.verdict() {
            return Ok(self);
        }
        let failed = self.assertions.iter().find(|a| !a.pass);
        let msg = match failed {
            Some(Assertion { name, witness: Some(w), .. }) => alloc::format!("{name}: {w}"),
            Some(a) => a.name.clone(),
            None => String::from("hypothesis failed"),
        };
        Err(Error::ReportFail(msg))
    }
}
