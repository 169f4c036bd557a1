//! The JSON envelope printed by every subcommand.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Schema-stable output wrapper. Fields are declared in alphabetical order
/// on purpose: serde_json objects serialize with sorted keys, so a parsed
/// envelope re-serializes byte-identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub assumptions: Vec<String>,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub verdict: EnvelopeVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnvelopeVerdict {
    #[serde(rename = "certified")]
    Certified,
    #[serde(rename = "failed")]
    Failed,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for EnvelopeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            EnvelopeVerdict::Certified => "certified",
            EnvelopeVerdict::Failed => "failed",
            EnvelopeVerdict::NotApplicable => "n/a",
        };
        write!(f, "{text}")
    }
}

impl OutputEnvelope {
    pub fn new(
        command: &str,
        inputs: Value,
        result: Value,
        assumptions: &[&str],
        verdict: EnvelopeVerdict,
    ) -> Self {
        OutputEnvelope {
            assumptions: assumptions.iter().map(|s| s.to_string()).collect(),
            command: command.to_string(),
            inputs,
            result,
            verdict,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}
