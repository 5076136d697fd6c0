//! Randomised and extremal checks of the whole theorem catalog.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::functionals::{
    eval_functional, g_lambda, g_sharp_form, liu_radius, ExtremalForm, FunctionalDescriptor,
};
use crate::harmonic::{self, PhiSequence, TABLE_FAMILIES, TABLE_M};
use crate::lemmas::{self, BoundReport, HOLD_TOLERANCE};
use crate::series::{
    automorphism_series, default_trunc_order, AutomorphismParams, BlaschkeProduct,
    CoefficientSeries,
};
use crate::theorems::{theorems, Theorem};

/// Extremal parameters tried by the sharpness suite.
pub const SHARPNESS_A: [f64; 3] = [0.9, 0.99, 0.999];
/// Factor applied to a stated radius when looking for a violation.
pub const RADIUS_INFLATION: f64 = 1.05;
/// Factor applied to the critical `lambda` when looking for a violation.
pub const LAMBDA_INFLATION: f64 = 1.02;
/// Relative radius increase for the harmonic sharpness check.
pub const HARMONIC_DELTA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub trunc: usize,
    pub seed: u64,
    /// Radii per sweep (`j/radii` of the stated radius, `j = 1..=radii`).
    pub radii: usize,
    /// Arguments of `z` tried at each radius.
    pub angles: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            trunc: 200,
            seed: 42,
            radii: 20,
            angles: 8,
        }
    }
}

/// Per-sample seeds derived from the base seed; sample `i` has degree `1 + i % 4`.
pub fn sample_plan(base: u64, samples: usize) -> Vec<(u64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    (0..samples)
        .map(|i| (rng.gen::<u64>(), 1 + i % 4))
        .collect()
}

fn sample_series(seed: u64, degree: usize, trunc: usize) -> Result<CoefficientSeries<f64>> {
    BlaschkeProduct::<f64>::sample(degree, seed)?.series(trunc)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub theorem: String,
    pub seed: u64,
    pub degree: usize,
    pub r: f64,
    pub arg: f64,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    /// `r` divided by the stated radius.
    pub fraction: f64,
    /// Largest functional value over samples and arguments.
    pub max_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerification {
    pub id: String,
    pub statement: String,
    pub radius: String,
    pub evaluations: usize,
    pub max_value: f64,
    pub sweep: Vec<SweepPoint>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: SuiteConfig,
    pub theorems: Vec<TheoremVerification>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.theorems.iter().all(|t| t.violations.is_empty())
    }
}

struct SampleSweep {
    values: Vec<f64>,
    violations: Vec<Violation>,
    evaluations: usize,
}

fn sweep_sample(
    th: &Theorem,
    s: &CoefficientSeries<f64>,
    seed: u64,
    degree: usize,
    cfg: &SuiteConfig,
) -> Result<SampleSweep> {
    let radius = th.radius.radius(s.a0())?;
    let mut values = vec![f64::NEG_INFINITY; cfg.radii];
    let mut violations = Vec::new();
    let mut evaluations = 0;
    // a per-sample offset keeps the argument grid from lining up across samples
    let offset = (seed % 1000) as f64 / 1000.0;
    for j in 1..=cfg.radii {
        let r = radius * j as f64 / cfg.radii as f64;
        for k in 0..cfg.angles {
            let arg = std::f64::consts::TAU * (k as f64 + offset) / cfg.angles as f64;
            let v = eval_functional(&th.descriptor, s, Complex::from_polar(r, arg))?;
            evaluations += 1;
            values[j - 1] = values[j - 1].max(v.total);
            if v.total > 1.0 + v.error_bound + HOLD_TOLERANCE {
                violations.push(Violation {
                    theorem: th.id.clone(),
                    seed,
                    degree,
                    r,
                    arg,
                    value: v.total,
                    error_bound: v.error_bound,
                });
            }
        }
    }
    Ok(SampleSweep {
        values,
        violations,
        evaluations,
    })
}

/// Samples Blaschke products and sweeps every theorem up to its radius.
pub fn verify_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    let plan = sample_plan(cfg.seed, cfg.samples);
    let series: Vec<CoefficientSeries<f64>> = plan
        .par_iter()
        .map(|&(seed, degree)| sample_series(seed, degree, cfg.trunc))
        .collect::<Result<_>>()?;
    let catalog = theorems()?;
    let reports = catalog
        .par_iter()
        .map(|th| {
            let sweeps: Vec<SampleSweep> = plan
                .par_iter()
                .zip(series.par_iter())
                .map(|(&(seed, degree), s)| sweep_sample(th, s, seed, degree, cfg))
                .collect::<Result<_>>()?;
            let sweep = (0..cfg.radii)
                .map(|j| SweepPoint {
                    fraction: (j + 1) as f64 / cfg.radii as f64,
                    max_value: sweeps
                        .iter()
                        .map(|s| s.values[j])
                        .fold(f64::NEG_INFINITY, f64::max),
                })
                .collect::<Vec<_>>();
            Ok(TheoremVerification {
                id: th.id.clone(),
                statement: th.statement.clone(),
                radius: th.radius.describe(),
                evaluations: sweeps.iter().map(|s| s.evaluations).sum(),
                max_value: sweep
                    .iter()
                    .map(|p| p.max_value)
                    .fold(f64::NEG_INFINITY, f64::max),
                sweep,
                violations: sweeps.into_iter().flat_map(|s| s.violations).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        config: *cfg,
        theorems: reports,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalValue {
    pub a: f64,
    pub r: f64,
    /// At the designated point.
    pub value: f64,
    /// Same extremal at the mirrored point `-z`.
    pub mirrored: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremSharpness {
    pub id: String,
    pub sharp_radius: bool,
    pub values: Vec<ExtremalValue>,
    /// Smallest tested `a` whose extremal exceeds 1 beyond the radius.
    pub first_exceeding_a: Option<f64>,
    /// The same search at the mirrored point.
    pub first_exceeding_a_mirrored: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaCheck {
    pub id: String,
    pub lambda: f64,
    /// Largest extremal value at the critical `lambda` over the `a` grid.
    pub max_at_lambda: f64,
    pub holds_at_lambda: bool,
    /// Smallest tested `a` at which `1.02 lambda` gives a value above 1.
    pub inflated_exceeds_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicSharpness {
    pub family: String,
    #[serde(rename = "M")]
    pub m: f64,
    pub exceeds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub theorems: Vec<TheoremSharpness>,
    pub lambda_checks: Vec<LambdaCheck>,
    pub harmonic: Vec<HarmonicSharpness>,
}

impl SharpnessReport {
    pub fn passed(&self) -> bool {
        self.theorems
            .iter()
            .all(|t| !t.sharp_radius || t.first_exceeding_a.is_some())
            && self
                .lambda_checks
                .iter()
                .all(|l| l.holds_at_lambda && l.inflated_exceeds_at.is_some())
            && self.harmonic.iter().all(|h| h.exceeds)
    }
}

fn extremal_value(
    d: &FunctionalDescriptor<f64>,
    params: AutomorphismParams<f64>,
    z: f64,
    trunc: usize,
) -> Result<f64> {
    let s = automorphism_series(params, trunc)?;
    Ok(eval_functional(d, &s, Complex::new(z, 0.0))?.total)
}

/// Grid of `a` for the critical-`lambda` checks.
pub fn lambda_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..20).map(|i| i as f64 * 0.05).collect();
    g.extend([0.99, 0.999]);
    g
}

/// Extremal evaluations beyond each stated radius, the critical `lambda`
/// checks and the harmonic radii checks.
pub fn sharpness_suite(trunc: usize) -> Result<SharpnessReport> {
    let catalog = theorems()?;
    let rows = catalog
        .par_iter()
        .map(|th| {
            let mut values = Vec::new();
            for a in SHARPNESS_A {
                let r = RADIUS_INFLATION * th.radius.radius(a)?;
                let z = th.extremal_sign() * r;
                values.push(ExtremalValue {
                    a,
                    r,
                    value: extremal_value(&th.descriptor, th.extremal_params(a), z, trunc)?,
                    mirrored: extremal_value(&th.descriptor, th.extremal_params(a), -z, trunc)?,
                });
            }
            Ok(TheoremSharpness {
                id: th.id.clone(),
                sharp_radius: th.sharp_radius,
                first_exceeding_a: values.iter().find(|v| v.value > 1.0).map(|v| v.a),
                first_exceeding_a_mirrored: values.iter().find(|v| v.mirrored > 1.0).map(|v| v.a),
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let lam = g_lambda::<f64>();
    let r0 = liu_radius::<f64>();
    let mut lambda_checks = Vec::new();
    for th in catalog.iter().filter(|t| t.id == "G1" || t.id == "G2") {
        let form = |l| {
            if th.id == "G1" {
                ExtremalForm::G1 { lambda: l }
            } else {
                ExtremalForm::G2 { lambda: l }
            }
        };
        let mut max_at = f64::NEG_INFINITY;
        for a in lambda_grid() {
            let series = extremal_value(&th.descriptor, th.extremal_params(a), r0, trunc)?;
            max_at = max_at.max(series).max(g_sharp_form(form(lam), a)?);
        }
        let mut inflated = th.descriptor;
        inflated.lambda = LAMBDA_INFLATION * lam;
        let mut exceeds = None;
        for a in SHARPNESS_A {
            let v = extremal_value(&inflated, th.extremal_params(a), r0, trunc)?;
            if v > 1.0 {
                exceeds = Some(a);
                break;
            }
        }
        lambda_checks.push(LambdaCheck {
            id: th.id.clone(),
            lambda: lam,
            max_at_lambda: max_at,
            holds_at_lambda: max_at <= 1.0 + HOLD_TOLERANCE,
            inflated_exceeds_at: exceeds,
        });
    }

    let mut families = vec![PhiSequence::<f64>::geometric()];
    for f in TABLE_FAMILIES {
        families.push(PhiSequence::builtin(f)?);
    }
    let jobs: Vec<(usize, f64)> = (0..families.len())
        .flat_map(|i| TABLE_M.map(|m| (i, m)))
        .collect();
    let harmonic = jobs
        .par_iter()
        .map(|&(i, m)| {
            Ok(HarmonicSharpness {
                family: families[i].id.clone(),
                m,
                exceeds: harmonic::sharpness_harmonic(&families[i], m, HARMONIC_DELTA)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SharpnessReport {
        theorems: rows,
        lambda_checks,
        harmonic,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundFailure {
    pub oracle: String,
    pub seed: u64,
    pub degree: usize,
    pub r: f64,
    /// Extra parameter (`p`, `N`, `k`) where the oracle takes one.
    pub param: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub oracle: String,
    pub checks: usize,
    pub skipped: usize,
    pub min_slack: f64,
    pub failures: Vec<BoundFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityCheck {
    pub case: String,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub oracles: Vec<OracleSummary>,
    pub equalities: Vec<EqualityCheck>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.oracles.iter().all(|o| o.failures.is_empty()) && self.equalities.iter().all(|e| e.pass)
    }
}

/// Largest slack magnitude accepted for an equality case.
pub const EQUALITY_TOLERANCE: f64 = 1e-12;

/// Tail bound below which the default truncation is kept.
pub const NEGLIGIBLE_TAIL: f64 = 1e-14;

pub const ORACLES: [&str; 6] = [
    "area_bound",
    "area_complement",
    "coeff_bound",
    "schwarz_pick",
    "sq_sum_bound",
    "tail_lemma",
];

#[derive(Default)]
struct Tally {
    checks: usize,
    skipped: usize,
    min_slack: f64,
    failures: Vec<BoundFailure>,
}

impl Tally {
    fn new() -> Self {
        Self {
            min_slack: f64::INFINITY,
            ..Default::default()
        }
    }

    fn record(&mut self, rep: &BoundReport<f64>, fail: impl FnOnce() -> BoundFailure) {
        self.checks += 1;
        self.min_slack = self.min_slack.min(rep.slack);
        if !rep.holds {
            self.failures.push(fail());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.min_slack = self.min_slack.min(other.min_slack);
        self.failures.extend(other.failures);
        self
    }
}

fn bounds_for_sample(seed: u64, degree: usize, cfg: &SuiteConfig) -> Result<[Tally; 6]> {
    let mut t: [Tally; 6] = std::array::from_fn(|_| Tally::new());
    let base = sample_series(seed, degree, cfg.trunc)?;
    let long = sample_series(seed, degree, cfg.trunc.max(default_trunc_order(0.99)))?;
    let fail = |oracle: &str, r: f64, param: f64, rep: &BoundReport<f64>| BoundFailure {
        oracle: oracle.to_string(),
        seed,
        degree,
        r,
        param,
        lhs: rep.lhs,
        rhs: rep.rhs,
    };
    let rep = lemmas::check_coeff_bound(&base);
    t[2].record(&rep, || fail("coeff_bound", 0.0, 0.0, &rep));
    let arg = (seed % 6283) as f64 / 1000.0;
    for j in 1..=cfg.radii {
        let r = j as f64 / (cfg.radii + 1) as f64;
        // escalate when the short tail bound would blur an equality case
        let s = if default_trunc_order(r) > cfg.trunc || base.tail_bound(r, 4) > NEGLIGIBLE_TAIL {
            &long
        } else {
            &base
        };
        for p in [1.0, 2.0] {
            let rep = lemmas::check_sq_sum_bound(s, r, p)?;
            t[4].record(&rep, || fail("sq_sum_bound", r, p, &rep));
        }
        for n in 1..=4usize {
            let rep = lemmas::check_tail_lemma(s, r, n)?;
            t[5].record(&rep, || fail("tail_lemma", r, n as f64, &rep));
        }
        for k in 1..=4usize {
            let rep = lemmas::check_schwarz_pick_deriv(s, Complex::from_polar(r, arg), k)?;
            t[3].record(&rep, || fail("schwarz_pick", r, k as f64, &rep));
        }
        if r <= std::f64::consts::FRAC_1_SQRT_2 {
            let rep = lemmas::check_area_bound(s, r)?;
            t[0].record(&rep, || fail("area_bound", r, 0.0, &rep));
            let rep = lemmas::check_area_complement(s, r)?;
            t[1].record(&rep, || fail("area_complement", r, 0.0, &rep));
        } else {
            t[0].skipped += 1;
            t[1].skipped += 1;
        }
    }
    Ok(t)
}

fn equality_cases(trunc: usize) -> Result<Vec<EqualityCheck>> {
    let mut out = Vec::new();
    let mut push = |case: String, slack: f64| {
        out.push(EqualityCheck {
            case,
            slack,
            pass: slack.abs() <= EQUALITY_TOLERANCE,
        });
    };
    for a in [0.0, 0.25, 0.5, 0.75, 0.9] {
        let s = automorphism_series(AutomorphismParams::minus(a), trunc)?;
        for r in [0.1, 0.3, 0.5, 0.7] {
            push(
                format!("sq_sum a={a} r={r} p=2"),
                lemmas::check_sq_sum_bound(&s, r, 2.0)?.slack,
            );
            push(
                format!("area a={a} r={r}"),
                lemmas::check_area_bound(&s, r)?.slack,
            );
        }
    }
    let rot = automorphism_series(AutomorphismParams::minus(0.0), trunc)?;
    push(
        "schwarz_pick rotation k=1 z=0".to_string(),
        lemmas::check_schwarz_pick_deriv(&rot, Complex::new(0.0, 0.0), 1)?.slack,
    );
    Ok(out)
}

/// Runs every lemma oracle on sampled Blaschke products.
pub fn bounds_suite(cfg: &SuiteConfig) -> Result<BoundsReport> {
    let plan = sample_plan(cfg.seed, cfg.samples);
    let per_sample = plan
        .par_iter()
        .map(|&(seed, degree)| bounds_for_sample(seed, degree, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut totals: [Tally; 6] = std::array::from_fn(|_| Tally::new());
    for sample in per_sample {
        for (acc, t) in totals.iter_mut().zip(sample) {
            *acc = std::mem::replace(acc, Tally::new()).merge(t);
        }
    }
    let oracles = ORACLES
        .iter()
        .zip(totals)
        .map(|(name, t)| OracleSummary {
            oracle: name.to_string(),
            checks: t.checks,
            skipped: t.skipped,
            min_slack: t.min_slack,
            failures: t.failures,
        })
        .collect();
    Ok(BoundsReport {
        oracles,
        equalities: equality_cases(cfg.trunc)?,
    })
}
