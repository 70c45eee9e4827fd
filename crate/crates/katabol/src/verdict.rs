use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Counterexample,
    Ambiguous,
}

/// Outcome of checking one claim at one set of parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub parameters: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn holds(claim: &str, parameters: Value) -> Self {
        Verdict { claim: claim.into(), parameters, status: Status::Holds, witness: None }
    }

    pub fn fails(claim: &str, parameters: Value, witness: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), parameters, status: Status::Counterexample, witness: Some(witness.into()) }
    }

    pub fn ambiguous(claim: &str, parameters: Value, witness: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), parameters, status: Status::Ambiguous, witness: Some(witness.into()) }
    }

    pub fn check(claim: &str, parameters: Value, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::holds(claim, parameters)
        } else {
            Self::fails(claim, parameters, witness())
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cells: Vec<Cell>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.into(), cells: vec![] }
    }

    pub fn push(&mut self, v: Verdict, millis: u64) {
        self.cells.push(Cell { params: v.parameters, status: v.status, witness: v.witness, millis });
    }

    pub fn all_hold(&self) -> bool {
        self.cells.iter().all(|c| c.status == Status::Holds)
    }

    pub fn failures(&self) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.status != Status::Holds).collect()
    }
}
