//! Acceptance gate: one test per release criterion. Every residual asserted
//! here is an exact rational; "pass" always means literally zero.

use plgalilei::automorphism::{apply, AutomorphismElement};
use plgalilei::bialgebra::{
    check_cocycle_condition, check_cojacobi, check_dual_jacobi, classify_constraint_family,
    cobracket_closed, cobracket_numeric, dual_structure_constants, ConstraintClass,
};
use plgalilei::bracket::{all_coordinates, bracket_oracle, closed_bracket_entry, JacobiContext};
use plgalilei::catalog::{
    check_coboundary, sample_family, sample_row, FamilyId, ENTRIES, FAMILY_IDS,
};
use plgalilei::eta::{check_cocycle, check_eta_jacobi, sample_parameters, EtaParameters, Formula};
use plgalilei::group::sample_group_element;
use plgalilei::rng::SampleRng;
use plgalilei::scalar::Scalar;
use std::process::Command;

const BOUND: i64 = 2;

/// One representative parameter set per catalog entry (each family once,
/// each canonical row once, in its first sign variant), deterministically.
fn catalog_representatives(seed: u64) -> Vec<(String, EtaParameters)> {
    let mut out = Vec::new();
    for (i, id) in FAMILY_IDS.iter().enumerate() {
        let mut rng = SampleRng::substream(seed, i as u64);
        out.push((format!("family {id}"), sample_family(*id, &mut rng)));
    }
    for e in ENTRIES.iter() {
        let mut rng = SampleRng::substream(seed, 1000 + e.row as u64);
        out.push((
            format!("row {} ({})", e.row, e.group),
            sample_row(e.row, e.signs[0], &mut rng),
        ));
    }
    out
}

/// Catalog targets for the classification criterion: every family with five
/// assignments plus every canonical row.
fn classification_targets(seed: u64) -> Vec<(String, EtaParameters)> {
    let mut out = Vec::new();
    for (i, id) in FAMILY_IDS.iter().enumerate() {
        for k in 0..5u64 {
            let mut rng = SampleRng::substream(seed, (i as u64) * 8 + k);
            out.push((
                format!("family {id} [{k}]"),
                sample_family(*id, &mut rng),
            ));
        }
    }
    for e in ENTRIES.iter() {
        let mut rng = SampleRng::substream(seed, 4000 + e.row as u64);
        out.push((
            format!("row {} ({})", e.row, e.group),
            sample_row(e.row, e.signs[0], &mut rng),
        ));
    }
    out
}

#[test]
fn criterion_1_cocycle_universality() {
    // 100 unconstrained parameter sets x 100 random group pairs each
    for pi in 0..100u64 {
        let mut rng = SampleRng::substream(11, pi);
        let p = sample_parameters(&mut rng, BOUND);
        for _ in 0..100 {
            let g1 = sample_group_element(&mut rng, BOUND);
            let g2 = sample_group_element(&mut rng, BOUND);
            let r = check_cocycle(&p, &g1, &g2, Formula::Corrected);
            assert!(r.is_zero(), "cocycle residual nonzero at parameter set {pi}");
        }
    }
}

#[test]
fn criterion_2_classification_validity() {
    for (label, p) in classification_targets(22) {
        let f = dual_structure_constants(&p);
        assert!(
            check_dual_jacobi(&f).is_empty(),
            "dual Jacobi fails for {label}"
        );
        assert!(check_cojacobi(&p), "co-Jacobi fails for {label}");
        assert!(
            check_cocycle_condition(&p),
            "cobracket cocycle condition fails for {label}"
        );
        let mut rng = SampleRng::substream(23, 0);
        for _ in 0..20 {
            let g = sample_group_element(&mut rng, BOUND);
            let bad = check_eta_jacobi(&p, &g);
            assert!(
                bad.is_empty(),
                "pointwise field Jacobi fails for {label}: {:?}",
                bad[0]
            );
        }
    }
}

#[test]
fn criterion_3_cobracket_cross_oracle() {
    for pi in 0..100u64 {
        let mut rng = SampleRng::substream(33, pi);
        let p = sample_parameters(&mut rng, BOUND);
        for k in 0..10 {
            let closed = cobracket_closed(&p, k);
            let numeric = cobracket_numeric(&p, k);
            assert_eq!(closed, numeric, "cobracket mismatch, generator {k}, set {pi}");
        }
    }
}

#[test]
fn criterion_4_coboundary_reconstruction() {
    for (label, p) in catalog_representatives(44) {
        if !(p.beta.is_zero() && p.v_param.is_zero() && p.theta.is_zero()) {
            continue;
        }
        let mut rng = SampleRng::substream(45, 0);
        for i in 0..100 {
            let g = sample_group_element(&mut rng, BOUND);
            let r = check_coboundary(&p, &g).expect("sector checked");
            assert!(r.is_zero(), "coboundary residual nonzero for {label} at sample {i}");
        }
    }
}

#[test]
fn criterion_5_bracket_consistency() {
    let coords = all_coordinates();
    let reps = catalog_representatives(55);
    // closed table vs oracle at 100 random (entry, point) pairs
    let mut rng = SampleRng::substream(56, 0);
    for i in 0..100 {
        let (_, p) = &reps[rng.choice(reps.len())];
        let g = sample_group_element(&mut rng, BOUND);
        let f = coords[rng.choice(coords.len())];
        let h = coords[rng.choice(coords.len())];
        let closed = closed_bracket_entry(p, &g, f, h).expect("catalog entries have n = 0");
        let oracle = bracket_oracle(f, h, p, &g);
        assert_eq!(closed, oracle, "bracket {{{f},{h}}} mismatch at draw {i}");
    }
    // pointwise bracket Jacobi: 20 points x 20 triples per catalog entry
    for (label, p) in &reps {
        let mut rng = SampleRng::substream(57, 0);
        for _ in 0..20 {
            let g = sample_group_element(&mut rng, BOUND);
            let ctx = JacobiContext::new(p, &g).expect("catalog entries have n = 0");
            for _ in 0..20 {
                let t = [
                    coords[rng.choice(coords.len())],
                    coords[rng.choice(coords.len())],
                    coords[rng.choice(coords.len())],
                ];
                let r = ctx.residual(t);
                assert!(
                    r.is_zero(),
                    "bracket Jacobi residual {r} for {label}, triple ({}, {}, {})",
                    t[0],
                    t[1],
                    t[2]
                );
            }
        }
    }
}

fn random_action(rng: &mut SampleRng) -> AutomorphismElement {
    match rng.choice(5) {
        0 => AutomorphismElement::Boost { v: rng.rational3(BOUND) },
        1 => AutomorphismElement::SpaceTranslation { a: rng.rational3(BOUND) },
        2 => AutomorphismElement::TimeTranslation { t: rng.rational(BOUND) },
        3 => plgalilei::automorphism::rotation_from_cayley(&rng.rational3(BOUND)),
        _ => AutomorphismElement::Scaling {
            a: rng.rational_nonzero(BOUND),
            b: rng.rational_nonzero(BOUND),
        },
    }
}

/// The structural checks an automorphism must preserve.
fn still_valid(p: &EtaParameters, rng: &mut SampleRng) -> bool {
    let g1 = sample_group_element(rng, BOUND);
    let g2 = sample_group_element(rng, BOUND);
    check_cocycle(p, &g1, &g2, Formula::Corrected).is_zero()
        && check_dual_jacobi(&dual_structure_constants(p)).is_empty()
        && check_cojacobi(p)
        && check_cocycle_condition(p)
}

#[test]
fn criterion_6_automorphism_coherence() {
    // 100 random (family, action) pairs preserve validity
    for i in 0..100u64 {
        let mut rng = SampleRng::substream(66, i);
        let id = FAMILY_IDS[rng.choice(FAMILY_IDS.len())];
        let p = sample_family(id, &mut rng);
        let action = random_action(&mut rng);
        let q = apply(&p, &action).expect("sampled actions are admissible");
        assert!(
            still_valid(&q, &mut rng),
            "action {action:?} broke family {id} at draw {i}"
        );
    }
    // scaling composition: (a1,b1) then (a2,b2) equals (a1 a2, b1 b2)
    let mut rng = SampleRng::substream(67, 0);
    let p = sample_family(FamilyId::V, &mut rng);
    let (a1, b1) = (Scalar::ratio(3, 2), Scalar::ratio(-5, 7));
    let (a2, b2) = (Scalar::ratio(-2, 9), Scalar::ratio(4, 3));
    let two_step = apply(
        &apply(&p, &AutomorphismElement::Scaling { a: a1.clone(), b: b1.clone() }).unwrap(),
        &AutomorphismElement::Scaling { a: a2.clone(), b: b2.clone() },
    )
    .unwrap();
    let one_step = apply(
        &p,
        &AutomorphismElement::Scaling { a: &a1 * &a2, b: &b1 * &b2 },
    )
    .unwrap();
    assert_eq!(two_step, one_step);
    // time-translation composition: t1 then t2 equals t1 + t2
    let (t1, t2) = (Scalar::ratio(5, 3), Scalar::ratio(-7, 4));
    let two_step = apply(
        &apply(&p, &AutomorphismElement::TimeTranslation { t: t1.clone() }).unwrap(),
        &AutomorphismElement::TimeTranslation { t: t2.clone() },
    )
    .unwrap();
    let one_step = apply(&p, &AutomorphismElement::TimeTranslation { t: &t1 + &t2 }).unwrap();
    assert_eq!(two_step, one_step);
}

#[test]
fn criterion_7_negative_controls() {
    // residuals are nonzero in-library...
    let cfg = plgalilei::verify::RunConfig { seed: 5, samples: 3, bound: BOUND };
    for name in ["constant-psi", "jacobi-break", "coboundary-sign"] {
        let report = plgalilei::verify::control_report(name, &cfg).unwrap();
        assert!(!report.pass, "control {name} produced no nonzero residual");
        let failures: usize = report
            .suites
            .iter()
            .flat_map(|s| &s.checks)
            .map(|c| c.failures.len())
            .sum();
        assert!(failures > 0, "control {name} recorded no failures");
    }
    // ...and drive a nonzero exit code through the binary
    for name in ["constant-psi", "jacobi-break", "coboundary-sign"] {
        let status = Command::new(env!("CARGO_BIN_EXE_plgalilei"))
            .args(["verify", "--control", name, "--samples", "3", "--seed", "5", "--bound", "2"])
            .stdout(std::process::Stdio::null())
            .status()
            .expect("binary runs");
        assert_eq!(status.code(), Some(1), "control {name} exit code");
    }
}

#[test]
fn criterion_8_constraint_family_coverage() {
    for (label, p) in catalog_representatives(88) {
        let classes = classify_constraint_family(&p);
        assert!(!classes.is_empty(), "no constraint class for {label}");
    }
    let mut rng = SampleRng::substream(89, 0);
    let p = sample_family(FamilyId::I, &mut rng);
    assert!(classify_constraint_family(&p).contains(&ConstraintClass::A));
    let p = sample_family(FamilyId::II, &mut rng);
    assert!(classify_constraint_family(&p).contains(&ConstraintClass::B));
}

#[test]
fn criterion_9_deterministic_reports() {
    let run = |jobs: &str, format: &str| -> Vec<u8> {
        let out = Command::new(env!("CARGO_BIN_EXE_plgalilei"))
            .args([
                "verify-all", "--seed", "42", "--samples", "2", "--bound", "2", "--jobs", jobs,
                "--format", format,
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify-all failed: {}", String::from_utf8_lossy(&out.stdout));
        out.stdout
    };
    let first = run("1", "text");
    let repeat = run("1", "text");
    let parallel = run("3", "text");
    assert_eq!(first, repeat, "same config, different bytes");
    assert_eq!(first, parallel, "parallelism changed report bytes");
    assert_eq!(run("1", "json"), run("2", "json"));
}
