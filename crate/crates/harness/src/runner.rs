//! Executes properties in parallel with independent seeded streams.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use wstar_core::{Algebra, LatticeOrbit, Projection};

use crate::config::{ConfigError, SuiteConfig, SUITES};
use crate::gen::{sub_rng, Rng64};
use crate::report::{PropertyRecord, SuiteReport};
use crate::suites;

/// Shared, read-only state of a run.
pub struct Ctx {
    pub cfg: SuiteConfig,
    pub orbit: LatticeOrbit<f64>,
}

impl Ctx {
    pub fn new(cfg: &SuiteConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let orbit = orbit_for(cfg, cfg.dim, cfg.rank);
        Ok(Ctx { cfg: cfg.clone(), orbit })
    }

    pub fn n(&self) -> usize {
        self.cfg.dim
    }

    pub fn k(&self) -> usize {
        self.cfg.rank
    }
}

/// The orbit of the rank-`k` coordinate projection with the run's tolerances.
pub fn orbit_for(cfg: &SuiteConfig, n: usize, k: usize) -> LatticeOrbit<f64> {
    let alg = Algebra::new(n, cfg.tol_rank, cfg.tol_eq).unwrap_or_else(|_| Algebra::with_defaults(n));
    LatticeOrbit::new(alg, Projection::canonical(n, k)).expect("canonical projection is valid")
}

/// A failed sample: an error raised by the library or the check itself.
#[derive(Debug)]
pub struct Fail(pub String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

/// Draws one sample and returns its residual.
pub type Check = fn(&Ctx, &mut Rng64) -> Result<f64, Fail>;

/// One sampled property.
pub struct Property {
    pub suite: &'static str,
    pub name: &'static str,
    pub statement: &'static str,
    pub tolerance: fn(&SuiteConfig) -> f64,
    pub check: Check,
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

pub fn run_property(ctx: &Ctx, p: &Property) -> PropertyRecord {
    let tol = (p.tolerance)(&ctx.cfg);
    let mut rng = sub_rng(ctx.cfg.seed, p.suite, p.name);
    let mut worst = 0.0f64;
    let mut error = None;
    for i in 0..ctx.cfg.samples {
        match catch_unwind(AssertUnwindSafe(|| (p.check)(ctx, &mut rng))) {
            Ok(Ok(r)) if r.is_nan() => {
                error = Some(format!("sample {i}: residual is NaN"));
                break;
            }
            Ok(Ok(r)) => worst = worst.max(r),
            Ok(Err(e)) => {
                error = Some(format!("sample {i}: {}", e.0));
                break;
            }
            Err(e) => {
                error = Some(format!("sample {i}: panic: {}", panic_message(e)));
                break;
            }
        }
    }
    let max_residual = if error.is_some() { None } else { Some(worst) };
    PropertyRecord {
        suite: p.suite.into(),
        name: p.name.into(),
        statement: p.statement.into(),
        samples: ctx.cfg.samples,
        passed: error.is_none() && worst <= tol,
        max_residual,
        tolerance: tol,
        error,
    }
}

/// All properties of the selected suites, in report order.
pub fn selected(cfg: &SuiteConfig) -> Vec<Property> {
    SUITES
        .iter()
        .filter(|s| cfg.suites.iter().any(|x| x == *s))
        .flat_map(|s| suites::properties(s))
        .collect()
}

pub fn run_suites(cfg: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    let ctx = Ctx::new(cfg)?;
    let props = selected(cfg);
    let records: Vec<PropertyRecord> = props.par_iter().map(|p| run_property(&ctx, p)).collect();
    Ok(SuiteReport::new(cfg.clone(), records))
}
