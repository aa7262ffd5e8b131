//! Property suites for `wstar-core`: seeded generators, a parallel runner
//! and a JSON report.

pub mod config;
pub mod gen;
pub mod report;
pub mod runner;
pub mod suites;

pub use config::{ConfigError, SuiteConfig, SUITES};
pub use report::{PropertyRecord, SuiteReport};
pub use runner::{run_suites, Ctx, Property};
