use std::fmt::Write as _;

use anyhow::Result;
use bohrlab::harmonic::{reproduce_tables, TableCell};
use bohrlab::radius::{self, QUOTED_TOLERANCE};
use bohrlab::suites::{self, BoundsReport, SharpnessReport, SuiteConfig, VerifyReport};
use serde::Serialize;

use crate::output::{csv_table, json, opt12, sig12};
use crate::{Command, Format, Outcome, RunConfig};

pub const EXIT_RADII: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_TABLE: u8 = 4;
pub const EXIT_SHARPNESS: u8 = 5;
pub const EXIT_BOUNDS: u8 = 6;

pub fn run(cmd: Command, cfg: &RunConfig) -> Outcome {
    let (result, fail_code) = match cmd {
        Command::Radii => (cmd_radii(cfg), EXIT_RADII),
        Command::Verify => (cmd_verify(cfg), EXIT_VERIFY),
        Command::Sharpness => (cmd_sharpness(cfg), EXIT_SHARPNESS),
        Command::Table => (cmd_table(cfg), EXIT_TABLE),
        Command::Bounds => (cmd_bounds(cfg), EXIT_BOUNDS),
    };
    match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            Outcome {
                report: String::new(),
                code: fail_code,
            }
        }
    }
}

fn suite_config(cfg: &RunConfig) -> SuiteConfig {
    SuiteConfig {
        samples: cfg.samples,
        trunc: cfg.trunc,
        seed: cfg.seed,
        ..SuiteConfig::default()
    }
}

fn status(ok: bool, code: u8) -> u8 {
    if ok {
        0
    } else {
        code
    }
}

#[derive(Debug, Serialize)]
struct RadiusRow {
    id: String,
    equation: String,
    root: f64,
    residual: f64,
    expected: Option<f64>,
    delta: Option<f64>,
}

pub fn cmd_radii(cfg: &RunConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    for eq in radius::catalog::<f64>() {
        let res = radius::solve(&eq, cfg.tol).map_err(|e| anyhow::anyhow!("{}: {e}", eq.id))?;
        rows.push(RadiusRow {
            delta: eq.expected.map(|x| (res.root - x).abs()),
            id: eq.id,
            equation: eq.rendering,
            root: res.root,
            residual: res.residual,
            expected: eq.expected,
        });
    }
    let bad: Vec<&RadiusRow> = rows
        .iter()
        .filter(|r| r.delta.is_some_and(|d| d > QUOTED_TOLERANCE))
        .collect();
    for r in &bad {
        eprintln!(
            "radius mismatch: {} root {} expected {:?}",
            r.id, r.root, r.expected
        );
    }
    let report = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => csv_table(
            &["id", "equation", "root", "residual", "expected", "delta"],
            rows.iter().map(|r| {
                vec![
                    r.id.clone(),
                    r.equation.clone(),
                    sig12(r.root),
                    sig12(r.residual),
                    opt12(r.expected),
                    opt12(r.delta),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                write!(s, "{} {:.6}", r.id, r.root)?;
                if let (Some(e), Some(d)) = (r.expected, r.delta) {
                    write!(s, "  expected {e:.6}  delta {d:.1e}")?;
                }
                writeln!(s, "  [{}]", r.equation)?;
            }
            writeln!(s, "constants")?;
            for (k, v) in radius::constants::<f64>() {
                writeln!(s, "  {k} {v:.12}")?;
            }
            s
        }
    };
    Ok(Outcome {
        report,
        code: status(bad.is_empty(), EXIT_RADII),
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let rep: VerifyReport = suites::verify_suite(&suite_config(cfg))?;
    for t in &rep.theorems {
        for v in &t.violations {
            eprintln!(
                "violation: theorem {} seed {} degree {} r {} value {}",
                v.theorem, v.seed, v.degree, v.r, v.value
            );
        }
    }
    let report = match cfg.format {
        Format::Json => json(&rep)?,
        Format::Csv => csv_table(
            &["theorem", "fraction", "max_value"],
            rep.theorems.iter().flat_map(|t| {
                t.sweep
                    .iter()
                    .map(|p| vec![t.id.clone(), sig12(p.fraction), sig12(p.max_value)])
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "samples {} seed {} trunc {}",
                cfg.samples, cfg.seed, cfg.trunc
            )?;
            for t in &rep.theorems {
                writeln!(
                    s,
                    "{} max {:.9} violations {} radius {}",
                    t.id,
                    t.max_value,
                    t.violations.len(),
                    t.radius
                )?;
            }
            s
        }
    };
    Ok(Outcome {
        report,
        code: status(rep.passed(), EXIT_VERIFY),
    })
}

pub fn cmd_sharpness(cfg: &RunConfig) -> Result<Outcome> {
    let rep: SharpnessReport = suites::sharpness_suite(cfg.trunc)?;
    for t in rep
        .theorems
        .iter()
        .filter(|t| t.sharp_radius && t.first_exceeding_a.is_none())
    {
        eprintln!("no exceedance: {}", t.id);
    }
    for l in rep
        .lambda_checks
        .iter()
        .filter(|l| !l.holds_at_lambda || l.inflated_exceeds_at.is_none())
    {
        eprintln!("lambda check failed: {}", l.id);
    }
    for h in rep.harmonic.iter().filter(|h| !h.exceeds) {
        eprintln!("no exceedance: {} M={}", h.family, h.m);
    }
    let report = match cfg.format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for t in &rep.theorems {
                for v in &t.values {
                    rows.push(vec![
                        "theorem".into(),
                        t.id.clone(),
                        sig12(v.a),
                        sig12(v.r),
                        sig12(v.value),
                        sig12(v.mirrored),
                    ]);
                }
            }
            for l in &rep.lambda_checks {
                rows.push(vec![
                    "lambda".into(),
                    l.id.clone(),
                    opt12(l.inflated_exceeds_at),
                    String::new(),
                    sig12(l.max_at_lambda),
                    String::new(),
                ]);
            }
            for h in &rep.harmonic {
                rows.push(vec![
                    "harmonic".into(),
                    h.family.clone(),
                    sig12(h.m),
                    String::new(),
                    (h.exceeds as u8).to_string(),
                    String::new(),
                ]);
            }
            csv_table(&["kind", "id", "param", "r", "value", "mirrored"], rows)?
        }
        Format::Text => {
            let mut s = String::new();
            let fmt_a = |a: Option<f64>| a.map_or("none".to_string(), |a| a.to_string());
            for t in &rep.theorems {
                writeln!(
                    s,
                    "{} sharp {} first_a {} mirrored_first_a {}",
                    t.id,
                    t.sharp_radius,
                    fmt_a(t.first_exceeding_a),
                    fmt_a(t.first_exceeding_a_mirrored)
                )?;
            }
            for l in &rep.lambda_checks {
                writeln!(
                    s,
                    "{} lambda {:.12} max {:.12} inflated_exceeds_at {}",
                    l.id,
                    l.lambda,
                    l.max_at_lambda,
                    fmt_a(l.inflated_exceeds_at)
                )?;
            }
            let exceeded = rep.harmonic.iter().filter(|h| h.exceeds).count();
            writeln!(s, "harmonic {exceeded}/{} exceed", rep.harmonic.len())?;
            s
        }
    };
    Ok(Outcome {
        report,
        code: status(rep.passed(), EXIT_SHARPNESS),
    })
}

pub fn cmd_table(cfg: &RunConfig) -> Result<Outcome> {
    let cells: Vec<TableCell> = reproduce_tables(cfg.tol)?;
    for c in cells.iter().filter(|c| !c.pass) {
        eprintln!(
            "table mismatch: {} M={} computed {} printed {}",
            c.row.family, c.row.m, c.row.radius, c.printed
        );
    }
    let report = match cfg.format {
        Format::Json => json(&cells)?,
        Format::Csv => csv_table(
            &[
                "family",
                "order",
                "M",
                "radius",
                "printed",
                "tolerance",
                "delta",
                "pass",
            ],
            cells.iter().map(|c| {
                vec![
                    c.row.family.clone(),
                    c.row.order.to_string(),
                    sig12(c.row.m),
                    sig12(c.row.radius),
                    c.printed.clone(),
                    sig12(c.tolerance),
                    sig12(c.delta),
                    c.pass.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for c in &cells {
                writeln!(
                    s,
                    "{} M={} computed {:.8} printed {} {}",
                    c.row.family,
                    c.row.m,
                    c.row.radius,
                    c.printed,
                    if c.pass { "ok" } else { "MISMATCH" }
                )?;
            }
            s
        }
    };
    Ok(Outcome {
        report,
        code: status(cells.iter().all(|c| c.pass), EXIT_TABLE),
    })
}

pub fn cmd_bounds(cfg: &RunConfig) -> Result<Outcome> {
    let rep: BoundsReport = suites::bounds_suite(&suite_config(cfg))?;
    for f in rep.oracles.iter().flat_map(|o| &o.failures) {
        eprintln!(
            "bound failure: {} seed {} degree {} r {} param {} lhs {} rhs {}",
            f.oracle, f.seed, f.degree, f.r, f.param, f.lhs, f.rhs
        );
    }
    for e in rep.equalities.iter().filter(|e| !e.pass) {
        eprintln!("equality case off: {} slack {}", e.case, e.slack);
    }
    let report = match cfg.format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = rep
                .oracles
                .iter()
                .map(|o| {
                    vec![
                        "oracle".into(),
                        o.oracle.clone(),
                        o.checks.to_string(),
                        o.skipped.to_string(),
                        sig12(o.min_slack),
                        o.failures.len().to_string(),
                    ]
                })
                .collect();
            rows.extend(rep.equalities.iter().map(|e| {
                vec![
                    "equality".into(),
                    e.case.clone(),
                    "1".into(),
                    "0".into(),
                    sig12(e.slack),
                    (!e.pass as u8).to_string(),
                ]
            }));
            csv_table(
                &["kind", "id", "checks", "skipped", "min_slack", "failures"],
                rows,
            )?
        }
        Format::Text => {
            let mut s = String::new();
            for o in &rep.oracles {
                writeln!(
                    s,
                    "{} checks {} skipped {} min_slack {:.3e} failures {}",
                    o.oracle,
                    o.checks,
                    o.skipped,
                    o.min_slack,
                    o.failures.len()
                )?;
            }
            let worst = rep
                .equalities
                .iter()
                .map(|e| e.slack.abs())
                .fold(0.0, f64::max);
            writeln!(
                s,
                "equality cases {} max |slack| {worst:.3e}",
                rep.equalities.len()
            )?;
            s
        }
    };
    Ok(Outcome {
        report,
        code: status(rep.passed(), EXIT_BOUNDS),
    })
}
