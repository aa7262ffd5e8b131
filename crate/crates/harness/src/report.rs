//! JSON report. Every field is a function of the configuration except
//! `timestamp`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::SuiteConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub suite: String,
    pub name: String,
    /// The identity being checked, in words.
    pub statement: String,
    pub samples: usize,
    /// Largest residual over the samples; `null` if a sample errored.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch at the end of the run.
    pub timestamp: u64,
    pub config: SuiteConfig,
    pub properties: Vec<PropertyRecord>,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(config: SuiteConfig, properties: Vec<PropertyRecord>) -> Self {
        let failed = properties.iter().filter(|p| !p.passed).count();
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        SuiteReport {
            tool: "wstar".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
            config,
            total: properties.len(),
            failed,
            passed: failed == 0,
            properties,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn get(&self, suite: &str, name: &str) -> Option<&PropertyRecord> {
        self.properties.iter().find(|p| p.suite == suite && p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json() + "\n")
    }

    /// The report with the timestamp zeroed, for comparisons.
    pub fn without_timestamp(&self) -> Self {
        SuiteReport { timestamp: 0, ..self.clone() }
    }
}
