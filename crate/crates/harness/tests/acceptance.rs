//! Acceptance criteria 1 to 9. Prints one line per criterion and exits
//! nonzero if any of them fails.

use std::process::{Command, ExitCode};

use wstar_harness::{run_suites, SuiteConfig, SuiteReport};

struct Criterion {
    id: u8,
    title: &'static str,
    /// `(suite, property, tolerance)`; the tolerance is pinned here rather than
    /// read from the report so that a drifting default cannot loosen a criterion.
    checks: Vec<(&'static str, &'static str, f64)>,
    samples: Option<usize>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "polar decomposition and relative inverses",
            checks: vec![
                ("wstar", "polar_reconstruction", 1e-8),
                ("wstar", "polar_partial_isometry", 1e-8),
                ("wstar", "inverse_right", 1e-8),
                ("wstar", "inverse_left", 1e-8),
                ("wstar", "inverse_uniqueness", 0.0),
            ],
            samples: None,
        },
        Criterion {
            id: 2,
            title: "charts, groupoid coordinates and cocycle",
            checks: vec![
                ("lattice", "chart_round_trip", 1e-8),
                ("lattice", "chart_inverse_round_trip", 1e-8),
                ("lattice", "mobius_transition", 1e-7),
                ("groupoid", "psi_round_trip", 1e-8),
                ("groupoid", "psi_transition", 1e-7),
                ("bundle", "cocycle_identity", 1e-6),
            ],
            samples: None,
        },
        Criterion {
            id: 3,
            title: "gauge groupoid homomorphism, independence and unitary image",
            checks: vec![
                ("bundle", "gauge_composition", 1e-8),
                ("bundle", "gauge_inverse_unit", 1e-8),
                ("bundle", "representative_independence", 1e-8),
                ("bundle", "unitary_image", 1e-8),
            ],
            samples: None,
        },
        Criterion {
            id: 4,
            title: "Lie algebroid bracket and anchor",
            checks: vec![
                ("algebroid", "flat_vs_chart", 1e-6),
                ("algebroid", "flat_vs_section", 1e-6),
                ("algebroid", "chart_vs_section", 1e-6),
                ("algebroid", "section_vs_section_chart", 1e-6),
                ("algebroid", "finite_difference", 1e-4),
                ("algebroid", "antisymmetry", 1e-10),
                ("algebroid", "jacobi", 1e-5),
                ("algebroid", "leibniz", 1e-6),
                ("algebroid", "anchor_homomorphism", 1e-4),
            ],
            samples: None,
        },
        Criterion {
            id: 5,
            title: "unitary sections tangent to the unitary orbit",
            checks: vec![("unitary", "frame_tangency", 1e-6), ("unitary", "chart_tangency", 1e-6)],
            samples: Some(100),
        },
        Criterion {
            id: 6,
            title: "Atiyah sequence ranks and containment",
            checks: vec![("atiyah", "dimensions", 0.0), ("atiyah", "containment", 1e-8)],
            samples: None,
        },
        Criterion {
            id: 7,
            title: "derivations, lift homomorphism and mod classification",
            checks: vec![
                ("derivations", "commutator_identity", 1e-5),
                ("derivations", "lift_homomorphism", 1e-5),
                ("derivations", "quotient_invariance", 1e-8),
                ("derivations", "quotient_homomorphism", 1e-8),
                ("derivations", "mod_classification", 0.0),
            ],
            samples: None,
        },
        Criterion {
            id: 8,
            title: "Grassmann matrix-element formulas",
            checks: vec![
                ("grassmann", "polar", 1e-12),
                ("grassmann", "supports", 1e-12),
                ("grassmann", "coordinates", 1e-12),
                ("grassmann", "bracket", 1e-12),
                ("grassmann", "anchor", 1e-12),
            ],
            samples: Some(100),
        },
    ]
}

fn suites_of(c: &Criterion) -> Vec<String> {
    let mut s: Vec<String> = c.checks.iter().map(|(s, _, _)| s.to_string()).collect();
    s.dedup();
    s
}

fn evaluate(c: &Criterion) -> (bool, Vec<String>) {
    let cfg = SuiteConfig { suites: suites_of(c), samples: c.samples.unwrap_or(SuiteConfig::default().samples), ..SuiteConfig::default() };
    let report = run_suites(&cfg).expect("default configuration is valid");
    let mut ok = true;
    let mut notes = Vec::new();
    for &(suite, name, tol) in &c.checks {
        let line = match report.get(suite, name) {
            None => {
                ok = false;
                format!("{suite}/{name}: missing")
            }
            Some(r) => {
                let pass = r.error.is_none() && r.max_residual.is_some_and(|x| x <= tol);
                ok &= pass;
                match (&r.error, r.max_residual) {
                    (Some(e), _) => format!("{suite}/{name}: error {e}"),
                    (None, Some(x)) => format!("{suite}/{name}: {} residual {x:.3e} tol {tol:.0e}", if pass { "ok" } else { "FAIL" }),
                    (None, None) => format!("{suite}/{name}: no residual"),
                }
            }
        };
        notes.push(line);
    }
    (ok, notes)
}

fn determinism() -> (bool, Vec<String>) {
    let cfg = SuiteConfig { samples: 20, ..SuiteConfig::default() };
    let a: SuiteReport = run_suites(&cfg).expect("valid config");
    let b: SuiteReport = run_suites(&cfg).expect("valid config");
    let same = a.without_timestamp().to_json() == b.without_timestamp().to_json();
    let mut notes = vec![format!("repeat run byte-identical apart from timestamp: {same}")];

    let out = Command::new(env!("CARGO_BIN_EXE_wstar"))
        .args(["--tol-eq", "1e-300", "--samples", "5"])
        .output()
        .expect("run the wstar binary");
    let code = out.status.code();
    let failures = String::from_utf8_lossy(&out.stdout).lines().filter(|l| l.starts_with("FAIL")).count();
    let negative = code.is_some_and(|c| c != 0) && failures > 0;
    notes.push(format!("tol_eq = 1e-300 gives exit {code:?} with {failures} failures reported"));
    (same && negative, notes)
}

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--nocapture" || a == "-v");
    let mut all = true;
    let mut rows: Vec<(u8, &str, bool, Vec<String>)> = criteria()
        .iter()
        .map(|c| {
            let (ok, notes) = evaluate(c);
            (c.id, c.title, ok, notes)
        })
        .collect();
    let (ok, notes) = determinism();
    rows.push((9, "determinism and negative control", ok, notes));

    for (id, title, ok, notes) in &rows {
        all &= *ok;
        println!("criterion {id}: {} {title}", if *ok { "PASS" } else { "FAIL" });
        if verbose || !ok {
            for n in notes {
                println!("    {n}");
            }
        }
    }
    if rows.iter().any(|r| r.0 == 7 && !r.2) {
        println!("note: criterion 7 requires the linear lift to be a homomorphism; with the bracket conventions in use it is an anti-homomorphism (see derivations/lift_anti_homomorphism), so this clause fails as stated");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
