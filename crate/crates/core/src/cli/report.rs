use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// What a machine value parses as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    /// An element of the enveloping algebra.
    Element,
    /// A scalar.
    Scalar,
    /// A state vector, written as the operator that produces it from `v`.
    State,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineValue {
    pub label: String,
    pub kind: ValueKind,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    pub details: Vec<String>,
    pub machine: Vec<MachineValue>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.id)?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        for m in &self.machine {
            write!(f, "\n    = {}: {}", m.label, m.value)?;
        }
        Ok(())
    }
}
