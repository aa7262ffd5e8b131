//! Run configuration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Suite names, in execution and report order.
pub const SUITES: [&str; 9] = ["wstar", "lattice", "groupoid", "bundle", "algebroid", "unitary", "atiyah", "derivations", "grassmann"];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("rank {k} must satisfy 1 <= k <= n = {n}")]
    Rank { n: usize, k: usize },
    #[error("tolerance `{0}` must be positive and finite")]
    Tolerance(&'static str),
    #[error("samples must be at least 1")]
    Samples,
    #[error("unknown suite `{0}`")]
    Suite(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dim: usize,
    pub rank: usize,
    pub seed: u64,
    pub samples: usize,
    /// Rank threshold of the gap policy.
    pub tol_rank: f64,
    /// Algebraic identities.
    pub tol_eq: f64,
    /// Paths that use finite differences.
    pub tol_fd: f64,
    /// Agreement between bracket formulas and Leibniz rules.
    pub tol_bracket: f64,
    /// Jacobi identity and derivation commutators.
    pub tol_jacobi: f64,
    /// Identities that hold exactly up to rounding, such as antisymmetry.
    pub tol_exact: f64,
    /// Matrix-element formulas against their embedded counterparts.
    pub tol_embed: f64,
    pub fd_step: f64,
    pub suites: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dim: 6,
            rank: 2,
            seed: 20240601,
            samples: 200,
            tol_rank: 1e-9,
            tol_eq: 1e-8,
            tol_fd: 1e-4,
            tol_bracket: 1e-6,
            tol_jacobi: 1e-5,
            tol_exact: 1e-10,
            tol_embed: 1e-12,
            fd_step: 1e-5,
            suites: SUITES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.rank < 1 || self.rank > self.dim {
            return Err(ConfigError::Rank { n: self.dim, k: self.rank });
        }
        let tols = [
            ("tol_rank", self.tol_rank),
            ("tol_eq", self.tol_eq),
            ("tol_fd", self.tol_fd),
            ("tol_bracket", self.tol_bracket),
            ("tol_jacobi", self.tol_jacobi),
            ("tol_exact", self.tol_exact),
            ("tol_embed", self.tol_embed),
            ("fd_step", self.fd_step),
        ];
        for (name, v) in tols {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::Tolerance(name));
            }
        }
        if self.samples < 1 {
            return Err(ConfigError::Samples);
        }
        if let Some(s) = self.suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(ConfigError::Suite(s.clone()));
        }
        Ok(())
    }

    pub fn with_suites(mut self, suites: &[&str]) -> Self {
        self.suites = suites.iter().map(|s| s.to_string()).collect();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert_eq!(SuiteConfig::default().validate(), Ok(()));
    }

    #[test]
    fn rejects_bad_values() {
        let c = SuiteConfig { rank: 7, ..SuiteConfig::default() };
        assert_eq!(c.validate(), Err(ConfigError::Rank { n: 6, k: 7 }));
        let c = SuiteConfig { tol_fd: 0.0, ..SuiteConfig::default() };
        assert_eq!(c.validate(), Err(ConfigError::Tolerance("tol_fd")));
        let c = SuiteConfig::default().with_suites(&["nope"]);
        assert_eq!(c.validate(), Err(ConfigError::Suite("nope".into())));
        let c = SuiteConfig { samples: 0, ..SuiteConfig::default() };
        assert_eq!(c.validate(), Err(ConfigError::Samples));
    }
}
