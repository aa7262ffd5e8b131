use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use wstar_harness::suites;
use wstar_harness::{run_suites, SuiteConfig, SUITES};

/// Runs the seeded property suites and reports residuals.
#[derive(Debug, Parser)]
#[command(name = "wstar", version)]
struct Cli {
    /// Dimension n of the matrix algebra.
    #[arg(long, default_value_t = 6)]
    dim: usize,
    /// Rank k of the base projection p0.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
    /// Samples drawn per property.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol_rank: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_eq: f64,
    #[arg(long, default_value_t = 1e-4)]
    tol_fd: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_bracket: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol_jacobi: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol_exact: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol_embed: f64,
    #[arg(long, default_value_t = 1e-5)]
    fd_step: f64,
    /// Suite to run; repeat to select several. Defaults to all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// List suites and properties, then exit.
    #[arg(long)]
    list: bool,
    /// Print every property, not only failures.
    #[arg(long, short)]
    verbose: bool,
}

impl Cli {
    fn config(&self) -> SuiteConfig {
        let mut cfg = SuiteConfig {
            dim: self.dim,
            rank: self.rank,
            seed: self.seed,
            samples: self.samples,
            tol_rank: self.tol_rank,
            tol_eq: self.tol_eq,
            tol_fd: self.tol_fd,
            tol_bracket: self.tol_bracket,
            tol_jacobi: self.tol_jacobi,
            tol_exact: self.tol_exact,
            tol_embed: self.tol_embed,
            fd_step: self.fd_step,
            ..SuiteConfig::default()
        };
        if !self.suites.is_empty() {
            cfg.suites = self.suites.clone();
        }
        cfg
    }
}

fn fmt_residual(r: Option<f64>) -> String {
    r.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for s in SUITES {
            for p in suites::properties(s) {
                println!("{s}/{:<28} {}", p.name, p.statement);
            }
        }
        return ExitCode::SUCCESS;
    }
    let report = match run_suites(&cli.config()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("wstar: {e}");
            return ExitCode::from(2);
        }
    };
    for p in &report.properties {
        if cli.verbose || !p.passed {
            let status = if p.passed { "ok  " } else { "FAIL" };
            print!("{status} {}/{:<28} residual {:>10}  tol {:.1e}", p.suite, p.name, fmt_residual(p.max_residual), p.tolerance);
            match &p.error {
                Some(e) => println!("  ({e})"),
                None => println!(),
            }
        }
    }
    println!("{} properties, {} passed, {} failed", report.total, report.total - report.failed, report.failed);
    if let Some(path) = &cli.report {
        if let Err(e) = report.write(path) {
            eprintln!("wstar: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
