//! Verification suites with deterministic, parallelism-independent reports.
//!
//! Every randomized check draws its inputs from an RNG substream keyed by
//! (master seed, sample index), and results are collected in index order, so
//! a report depends only on (seed, samples, bound) — never on thread count
//! or scheduling.

use crate::bialgebra::{
    check_cocycle_condition, check_cojacobi, check_dual_jacobi, classify_constraint_family,
    cobracket_closed, cobracket_numeric, dual_structure_constants,
};
use crate::bracket::{all_coordinates, bracket_oracle, closed_bracket_entry, JacobiContext};
use crate::catalog::{
    check_coboundary, check_coboundary_sign_flipped, sample_family, sample_row,
    FamilyId, ENTRIES, FAMILY_IDS,
};
use crate::eta::{
    check_cocycle, check_cocycle_broken_psi, check_eta_jacobi, EtaParameters, Formula,
};
use crate::group::{sample_group_element, BASIS_NAMES};
use crate::rng::SampleRng;
use crate::scalar::Scalar;
use rayon::prelude::*;
use serde::Serialize;

/// Shared settings of one verification run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub bound: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, samples: 100, bound: 8 }
    }
}

/// Run a closure inside a rayon pool with the requested worker count
/// (`None` = automatic). Reports are identical either way.
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

#[derive(Serialize, Debug)]
pub struct FailureRecord {
    pub location: String,
    pub residual: String,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub samples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub failures: Vec<FailureRecord>,
    pub pass: bool,
}

impl CheckReport {
    fn new(name: &'static str, samples: u64, failures: Vec<FailureRecord>) -> Self {
        let pass = failures.is_empty();
        CheckReport { name, samples, note: None, failures, pass }
    }
}

#[derive(Serialize, Debug)]
pub struct SuiteReport {
    pub label: String,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

/// Distribute `samples` indexed draws over the worker pool; failures come
/// back in index order regardless of scheduling.
fn par_samples<F>(cfg: &RunConfig, stream_base: u64, samples: u64, f: F) -> Vec<FailureRecord>
where
    F: Fn(u64, &mut SampleRng) -> Option<FailureRecord> + Sync,
{
    (0..samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = SampleRng::substream(cfg.seed, stream_base + i);
            f(i, &mut rng)
        })
        .collect()
}

fn fmt_residual<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("residual serializes")
}

/// Identity suite for one parameter set. `stream` namespaces the RNG
/// substreams so distinct suites in a run never share draws.
pub fn run_suite(label: String, p: &EtaParameters, cfg: &RunConfig, stream: u64) -> SuiteReport {
    let base = stream << 32;
    let spot = cfg.samples.div_ceil(20).max(1);
    let mut checks = Vec::new();

    // group cocycle identity of the bivector field
    checks.push(CheckReport::new(
        "cocycle-identity",
        cfg.samples,
        par_samples(cfg, base, cfg.samples, |i, rng| {
            let g1 = sample_group_element(rng, cfg.bound);
            let g2 = sample_group_element(rng, cfg.bound);
            let r = check_cocycle(p, &g1, &g2, Formula::Corrected);
            (!r.is_zero()).then(|| FailureRecord {
                location: format!("sample {i}: g1={}, g2={}", fmt_residual(&g1), fmt_residual(&g2)),
                residual: fmt_residual(&r),
            })
        }),
    ));

    // closed cobracket vs numeric differentiation, all ten generators
    let mut fails = Vec::new();
    for k in 0..10 {
        let closed = cobracket_closed(p, k);
        let numeric = cobracket_numeric(p, k);
        for i in 0..10 {
            for j in 0..10 {
                if closed[i][j] != numeric[i][j] {
                    fails.push(FailureRecord {
                        location: format!(
                            "delta({}) block ({}, {})",
                            BASIS_NAMES[k], BASIS_NAMES[i], BASIS_NAMES[j]
                        ),
                        residual: format!(
                            "closed={} numeric={}",
                            closed[i][j], numeric[i][j]
                        ),
                    });
                }
            }
        }
    }
    checks.push(CheckReport::new("cobracket-cross-check", 10, fails));

    // Jacobi identity of the dual algebra (120 generator triples)
    let f = dual_structure_constants(p);
    let fails = check_dual_jacobi(&f)
        .into_iter()
        .map(|(i, j, k, r)| FailureRecord {
            location: format!(
                "triple ({}, {}, {})",
                BASIS_NAMES[i], BASIS_NAMES[j], BASIS_NAMES[k]
            ),
            residual: r.to_string(),
        })
        .collect();
    checks.push(CheckReport::new("dual-jacobi", 120, fails));

    // cobracket cocycle condition and co-Jacobi condition
    let fails = if check_cocycle_condition(p) {
        Vec::new()
    } else {
        vec![FailureRecord { location: "cobracket cocycle condition".into(), residual: "nonzero".into() }]
    };
    checks.push(CheckReport::new("cobracket-cocycle", 1, fails));
    let fails = if check_cojacobi(p) {
        Vec::new()
    } else {
        vec![FailureRecord { location: "co-Jacobi condition".into(), residual: "nonzero".into() }]
    };
    checks.push(CheckReport::new("cojacobi", 1, fails));

    // pointwise Jacobi of the bivector field at random group points
    checks.push(CheckReport::new(
        "field-jacobi",
        spot,
        par_samples(cfg, base + (1 << 24), spot, |i, rng| {
            let g = sample_group_element(rng, cfg.bound);
            let bad = check_eta_jacobi(p, &g);
            (!bad.is_empty()).then(|| {
                let (a, b, c, r) = &bad[0];
                FailureRecord {
                    location: format!(
                        "point {i}, first bad triple ({}, {}, {})",
                        BASIS_NAMES[*a], BASIS_NAMES[*b], BASIS_NAMES[*c]
                    ),
                    residual: r.to_string(),
                }
            })
        }),
    ));

    // closed bracket table vs defining-formula oracle on random entries
    let coords = all_coordinates();
    checks.push(CheckReport::new(
        "bracket-table-vs-oracle",
        cfg.samples,
        par_samples(cfg, base + (2 << 24), cfg.samples, |i, rng| {
            let g = sample_group_element(rng, cfg.bound);
            let f = coords[rng.choice(coords.len())];
            let h = coords[rng.choice(coords.len())];
            let closed = closed_bracket_entry(p, &g, f, h).expect("catalog entries have n = 0");
            let oracle = bracket_oracle(f, h, p, &g);
            (closed != oracle).then(|| FailureRecord {
                location: format!("sample {i}: {{{f},{h}}} at g={}", fmt_residual(&g)),
                residual: format!("closed={closed} oracle={oracle}"),
            })
        }),
    ));

    // pointwise Jacobi of the coordinate brackets
    checks.push(CheckReport::new(
        "bracket-jacobi",
        spot,
        par_samples(cfg, base + (3 << 24), spot, |i, rng| {
            let g = sample_group_element(rng, cfg.bound);
            let ctx = JacobiContext::new(p, &g).expect("catalog entries have n = 0");
            for _ in 0..5 {
                let t = [
                    coords[rng.choice(coords.len())],
                    coords[rng.choice(coords.len())],
                    coords[rng.choice(coords.len())],
                ];
                let r = ctx.residual(t);
                if !r.is_zero() {
                    return Some(FailureRecord {
                        location: format!("point {i}, triple ({}, {}, {})", t[0], t[1], t[2]),
                        residual: r.to_string(),
                    });
                }
            }
            None
        }),
    ));

    // coboundary reconstruction from the r-matrix, where applicable
    if p.beta.is_zero() && p.v_param.is_zero() && p.theta.is_zero() {
        checks.push(CheckReport::new(
            "coboundary",
            cfg.samples,
            par_samples(cfg, base + (4 << 24), cfg.samples, |i, rng| {
                let g = sample_group_element(rng, cfg.bound);
                let r = check_coboundary(p, &g).expect("sector already checked");
                (!r.is_zero()).then(|| FailureRecord {
                    location: format!("sample {i}: g={}", fmt_residual(&g)),
                    residual: fmt_residual(&r),
                })
            }),
        ));
    } else {
        let mut c = CheckReport::new("coboundary", 0, Vec::new());
        c.note = Some("skipped: beta, v or theta nonzero (outside the coboundary sector)".into());
        checks.push(c);
    }

    // constraint-family classification must recognize the parameters
    let classes = classify_constraint_family(p);
    let fails = if classes.is_empty() {
        vec![FailureRecord {
            location: "constraint classification".into(),
            residual: "no class (a)-(f) matched".into(),
        }]
    } else {
        Vec::new()
    };
    let mut c = CheckReport::new("constraint-classification", 1, fails);
    if !classes.is_empty() {
        c.note = Some(format!("classes: {classes:?}"));
    }
    checks.push(c);

    let pass = checks.iter().all(|c| c.pass);
    SuiteReport { label, checks, pass }
}

fn finish(cfg: &RunConfig, suites: Vec<SuiteReport>) -> Report {
    let pass = suites.iter().all(|s| s.pass);
    Report { config: *cfg, suites, pass }
}

/// Verify a single parameter set.
pub fn verify_params(label: String, p: &EtaParameters, cfg: &RunConfig) -> Report {
    finish(cfg, vec![run_suite(label, p, cfg, 1)])
}

/// Verify every family (five random admissible assignments each) and every
/// canonical row in every sign variant.
pub fn verify_all(cfg: &RunConfig) -> Report {
    // fix all sampled parameter sets up front, deterministically
    let mut targets: Vec<(String, EtaParameters)> = Vec::new();
    for (fi, id) in FAMILY_IDS.iter().enumerate() {
        for k in 0..5u64 {
            let mut rng = SampleRng::substream(cfg.seed, 0x0100_0000_0000 + (fi as u64) * 8 + k);
            targets.push((format!("family {id} [assignment {k}]"), sample_family(*id, &mut rng)));
        }
    }
    for e in &ENTRIES {
        for (si, &sg) in e.signs.iter().enumerate() {
            let mut rng = SampleRng::substream(
                cfg.seed,
                0x0200_0000_0000 + (e.row as u64) * 8 + si as u64,
            );
            let label = if e.signs.len() == 1 {
                format!("row {} ({})", e.row, e.group)
            } else {
                format!("row {} ({}) [sign {sg}]", e.row, e.group)
            };
            targets.push((label, sample_row(e.row, sg, &mut rng)));
        }
    }
    let suites: Vec<SuiteReport> = targets
        .into_par_iter()
        .enumerate()
        .map(|(i, (label, p))| run_suite(label, &p, cfg, i as u64 + 1))
        .collect();
    finish(cfg, suites)
}

/// The three documented negative controls. Each report must FAIL (nonzero
/// residuals), calibrating that the verifier detects broken structures.
pub fn control_report(name: &str, cfg: &RunConfig) -> Result<Report, String> {
    match name {
        "constant-psi" => {
            let mut rng = SampleRng::substream(cfg.seed, 0x0300_0000_0000);
            let p = crate::eta::sample_parameters(&mut rng, cfg.bound.min(3));
            let fails = par_samples(cfg, 0x0301 << 32, cfg.samples, |i, rng| {
                let g1 = sample_group_element(rng, cfg.bound);
                let g2 = sample_group_element(rng, cfg.bound);
                let r = check_cocycle_broken_psi(&p, &g1, &g2);
                (!r.is_zero()).then(|| FailureRecord {
                    location: format!("sample {i}"),
                    residual: fmt_residual(&r),
                })
            });
            let mut c = CheckReport::new("cocycle-identity (constant-psi control)", cfg.samples, fails);
            c.note = Some("control: the time-rotation block replaced by a constant".into());
            let pass = c.pass;
            Ok(finish(cfg, vec![SuiteReport {
                label: "negative control constant-psi".into(),
                checks: vec![c],
                pass,
            }]))
        }
        "jacobi-break" => {
            let mut rng = SampleRng::substream(cfg.seed, 0x0300_0000_0001);
            let mut p = sample_family(FamilyId::I, &mut rng);
            p.xi = [Scalar::zero(), Scalar::zero(), Scalar::one()];
            let mut report = verify_params(
                "negative control jacobi-break (first family plus a rotation-sector source)".into(),
                &p,
                cfg,
            );
            for c in &mut report.suites[0].checks {
                if c.name == "cocycle-identity" && !c.pass {
                    return Err("control parameters unexpectedly break the cocycle".into());
                }
            }
            Ok(report)
        }
        "coboundary-sign" => {
            let mut rng = SampleRng::substream(cfg.seed, 0x0300_0000_0002);
            let p = sample_family(FamilyId::XVIII, &mut rng);
            let fails = par_samples(cfg, 0x0302 << 32, cfg.samples, |i, rng| {
                let g = sample_group_element(rng, cfg.bound);
                let r = check_coboundary_sign_flipped(&p, &g).expect("sector is coboundary");
                (!r.is_zero()).then(|| FailureRecord {
                    location: format!("sample {i}"),
                    residual: fmt_residual(&r),
                })
            });
            let mut c = CheckReport::new("coboundary (sign-flipped control)", cfg.samples, fails);
            c.note = Some("control: coboundary difference taken in the wrong order".into());
            let pass = c.pass;
            Ok(finish(cfg, vec![SuiteReport {
                label: "negative control coboundary-sign".into(),
                checks: vec![c],
                pass,
            }]))
        }
        other => Err(format!(
            "unknown control {other} (expected constant-psi, jacobi-break or coboundary-sign)"
        )),
    }
}

/// Plain-text report rendering. Byte-identical for identical reports.
pub fn render_text(report: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "verification report (seed={}, samples={}, bound={})",
        report.config.seed, report.config.samples, report.config.bound
    )
    .unwrap();
    for s in &report.suites {
        writeln!(out, "[{}] {}", if s.pass { "PASS" } else { "FAIL" }, s.label).unwrap();
        for c in &s.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            match &c.note {
                Some(n) => {
                    writeln!(out, "  {:26} {} ({} samples; {})", c.name, status, c.samples, n)
                        .unwrap()
                }
                None => writeln!(out, "  {:26} {} ({} samples)", c.name, status, c.samples).unwrap(),
            }
            for f in c.failures.iter().take(5) {
                writeln!(out, "    nonzero residual at {}: {}", f.location, f.residual).unwrap();
            }
            if c.failures.len() > 5 {
                writeln!(out, "    ... {} further nonzero residuals", c.failures.len() - 5)
                    .unwrap();
            }
        }
    }
    writeln!(
        out,
        "overall: {} ({} suites)",
        if report.pass { "PASS" } else { "FAIL" },
        report.suites.len()
    )
    .unwrap();
    out
}

/// JSON report rendering.
pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> RunConfig {
        RunConfig { seed: 7, samples: 4, bound: 2 }
    }

    #[test]
    fn family_suite_passes() {
        let cfg = small_cfg();
        let mut rng = SampleRng::substream(cfg.seed, 99);
        let p = sample_family(FamilyId::I, &mut rng);
        let report = verify_params("family I".into(), &p, &cfg);
        assert!(report.pass, "{}", render_text(&report));
    }

    #[test]
    fn reports_are_parallelism_independent() {
        let cfg = small_cfg();
        let mut rng = SampleRng::substream(cfg.seed, 99);
        let p = sample_family(FamilyId::XVIII, &mut rng);
        let one = with_jobs(Some(1), || render_text(&verify_params("x".into(), &p, &cfg)));
        let many = with_jobs(Some(4), || render_text(&verify_params("x".into(), &p, &cfg)));
        assert_eq!(one, many);
        let j1 = with_jobs(Some(1), || render_json(&verify_params("x".into(), &p, &cfg)));
        let j4 = with_jobs(Some(3), || render_json(&verify_params("x".into(), &p, &cfg)));
        assert_eq!(j1, j4);
    }

    #[test]
    fn all_controls_fail() {
        let cfg = small_cfg();
        for name in ["constant-psi", "jacobi-break", "coboundary-sign"] {
            let report = control_report(name, &cfg).unwrap();
            assert!(!report.pass, "control {name} unexpectedly passed");
        }
        assert!(control_report("bogus", &cfg).is_err());
    }
}
