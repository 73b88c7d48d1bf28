//! Action of the automorphism group (boosts, space and time translations,
//! rotations, and the two dilations) on the parameter set, plus a witness
//! checker for equivalence of structures.
//!
//! Each action is the closed-form pullback of the bivector field by the
//! corresponding automorphism; every formula here has been validated against
//! the numerically computed pullback (exact derivative extraction) for random
//! rational inputs.

use crate::eta::EtaParameters;
use crate::linalg::{cayley, dot3, eps, id3, kron, matmul3, matvec3, transpose3, Mat3, Vec3};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// One generator of the automorphism group, with exact rational parameters.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AutomorphismElement {
    Boost { v: Vec3<Scalar> },
    SpaceTranslation { a: Vec3<Scalar> },
    TimeTranslation { t: Scalar },
    Rotation { r: Mat3<Scalar> },
    /// Rescaling of the space unit by `a` and the time unit by `b`.
    Scaling { a: Scalar, b: Scalar },
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AutomorphismError {
    #[error("rotation matrix is not special orthogonal")]
    NotARotation,
    #[error("scaling factors must be nonzero")]
    ZeroScaling,
}

/// Boost action: `gamma`, `lambda`, `xi`, `rho`, `sigma`, `chi`, `omega`
/// transform; `alpha`, `beta`, `phi`, `theta`, `v`, `n` are fixed.
pub fn act_boost(p: &EtaParameters, v: &Vec3<Scalar>) -> EtaParameters {
    let mut q = p.clone();
    let s = Scalar::from_int;
    let f = Scalar::ratio;
    let vn = dot3(v, &p.n);
    let av = dot3(&p.alpha, v);
    for k in 0..3 {
        let mut g = &p.gamma[k] - &p.beta * &v[k];
        let mut l = &p.lambda[k] - &p.v_param * &v[k];
        for i in 0..3 {
            for m in 0..3 {
                let e = eps(k, i, m);
                if e != 0 {
                    g = g + s(e) * &v[i] * &p.alpha[m];
                    l = l - f(e, 2) * &p.phi[i] * &v[m];
                }
            }
        }
        q.gamma[k] = g;
        q.lambda[k] = l;
        let mut x = p.xi[k].clone();
        for m in 0..3 {
            x = x - &p.omega[k][m] * &v[m];
        }
        q.xi[k] = x + &v[k] * &vn;
    }
    q.rho = &p.rho - f(1, 3) * &av;
    for i in 0..3 {
        for j in 0..3 {
            q.omega[i][j] = &p.omega[i][j] - &v[i] * &p.n[j] - &vn * s(kron(i, j));
            let mut sg = &p.sigma[i][j] + &p.alpha[j] * &v[i] - f(kron(i, j), 3) * &av;
            for l in 0..3 {
                let e = eps(i, j, l);
                if e != 0 {
                    sg = sg + s(e) * &p.beta * &v[l];
                }
            }
            q.sigma[i][j] = sg;
        }
    }
    let vg = dot3(v, &p.gamma);
    let mut sig_twist = Scalar::zero();
    for l in 0..3 {
        for nn in 0..3 {
            for m in 0..3 {
                let e = eps(l, nn, m);
                if e != 0 {
                    sig_twist = sig_twist + s(e) * &p.sigma[nn][l] * &v[m];
                }
            }
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            let mut c = &p.chi[a][b] + &v[a] * &p.gamma[b];
            let mut rot_alpha = Scalar::zero();
            for nn in 0..3 {
                for m in 0..3 {
                    let e = eps(b, nn, m);
                    if e != 0 {
                        rot_alpha = rot_alpha + s(e) * &v[nn] * &p.alpha[m];
                    }
                }
            }
            c = c + rot_alpha * &v[a];
            for k in 0..3 {
                let e = eps(a, b, k);
                if e != 0 {
                    for nn in 0..3 {
                        c = c - f(e, 2) * &p.sigma[nn][k] * &v[nn];
                    }
                    c = c - s(e) * &p.rho * &v[k];
                }
            }
            for l in 0..3 {
                for m in 0..3 {
                    let e1 = eps(a, l, m);
                    if e1 != 0 {
                        c = c - f(e1, 2) * &p.sigma[b][l] * &v[m];
                    }
                    let e2 = eps(b, l, m);
                    if e2 != 0 {
                        c = c - f(e2, 2) * &p.sigma[a][l] * &v[m];
                    }
                }
            }
            c = c - f(kron(a, b), 3) * (&vg + &sig_twist);
            q.chi[a][b] = c;
        }
    }
    q
}

/// Space-translation action: `phi`, `lambda`, `rho`, `sigma`, `chi`
/// transform; the rest are fixed.
pub fn act_space_translation(p: &EtaParameters, a: &Vec3<Scalar>) -> EtaParameters {
    let mut q = p.clone();
    let s = Scalar::from_int;
    let f = Scalar::ratio;
    let an = dot3(a, &p.n);
    for i in 0..3 {
        let mut ph = &p.phi[i] - &p.beta * &a[i];
        for nn in 0..3 {
            for k in 0..3 {
                let e = eps(i, nn, k);
                if e != 0 {
                    ph = ph - s(e) * &p.alpha[nn] * &a[k];
                }
            }
        }
        q.phi[i] = ph;
        let mut l = &p.lambda[i] - &p.rho * &a[i] + &an * &a[i];
        for nn in 0..3 {
            l = l - f(1, 2) * &p.sigma[nn][i] * &a[nn];
        }
        q.lambda[i] = l;
    }
    q.rho = &p.rho - f(4, 3) * &an;
    for i in 0..3 {
        for b in 0..3 {
            q.sigma[i][b] =
                &p.sigma[i][b] + f(2 * kron(i, b), 3) * &an - s(2) * &p.n[i] * &a[b];
            let mut c = p.chi[i][b].clone();
            for nn in 0..3 {
                for k in 0..3 {
                    let e = eps(i, b, nn);
                    if e != 0 {
                        c = c - s(e) * &p.omega[nn][k] * &a[k];
                    }
                    let e1 = eps(i, nn, k);
                    if e1 != 0 {
                        c = c + s(e1) * &p.omega[nn][b] * &a[k];
                    }
                    let e2 = eps(b, nn, k);
                    if e2 != 0 {
                        c = c + s(e2) * &p.omega[nn][i] * &a[k];
                    }
                }
            }
            if i == b {
                for m in 0..3 {
                    for nn in 0..3 {
                        for k in 0..3 {
                            let e = eps(m, nn, k);
                            if e != 0 {
                                c = c + f(2 * e, 3) * &p.omega[m][nn] * &a[k];
                            }
                        }
                    }
                }
            }
            q.chi[i][b] = c;
        }
    }
    q
}

/// Time-translation action: `phi`, `lambda`, `rho`, `sigma`, `chi` transform.
pub fn act_time_translation(p: &EtaParameters, t: &Scalar) -> EtaParameters {
    let mut q = p.clone();
    let s = Scalar::from_int;
    let f = Scalar::ratio;
    let om_nn: Scalar = (0..3).fold(Scalar::zero(), |acc, i| acc + &p.omega[i][i]);
    for i in 0..3 {
        q.phi[i] = &p.phi[i] + t * &p.gamma[i];
        let mut l = &p.lambda[i] + t * t * &p.xi[i];
        for m in 0..3 {
            for nn in 0..3 {
                let e = eps(i, m, nn);
                if e != 0 {
                    l = l - f(e, 2) * t * &p.chi[nn][m];
                }
            }
        }
        q.lambda[i] = l;
    }
    q.rho = &p.rho + f(1, 3) * t * &om_nn;
    for a in 0..3 {
        for b in 0..3 {
            q.sigma[a][b] =
                &p.sigma[a][b] + s(2) * t * &p.omega[b][a] - f(2 * kron(a, b), 3) * t * &om_nn;
            let mut c = p.chi[a][b].clone();
            for k in 0..3 {
                let e = eps(a, b, k);
                if e != 0 {
                    c = c + s(2 * e) * t * &p.xi[k];
                }
            }
            q.chi[a][b] = c;
        }
    }
    q
}

fn is_special_orthogonal(r: &Mat3<Scalar>) -> bool {
    if matmul3(r, &transpose3(r)) != id3() {
        return false;
    }
    let det = &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0]);
    det == Scalar::one()
}

/// Rotation action: vector parameters map by `R`, rank-2 parameters by
/// `M -> R M R^T`, scalars are fixed.
pub fn act_rotation(
    p: &EtaParameters,
    r: &Mat3<Scalar>,
) -> Result<EtaParameters, AutomorphismError> {
    if !is_special_orthogonal(r) {
        return Err(AutomorphismError::NotARotation);
    }
    let mut q = p.clone();
    let sandwich = |m: &Mat3<Scalar>| -> Mat3<Scalar> {
        matmul3(&matmul3(r, m), &transpose3(r))
    };
    q.alpha = matvec3(r, &p.alpha);
    q.gamma = matvec3(r, &p.gamma);
    q.phi = matvec3(r, &p.phi);
    q.lambda = matvec3(r, &p.lambda);
    q.xi = matvec3(r, &p.xi);
    q.n = matvec3(r, &p.n);
    q.sigma = sandwich(&p.sigma);
    q.chi = sandwich(&p.chi);
    q.omega = sandwich(&p.omega);
    Ok(q)
}

/// Dilation action with space factor `a` and time factor `b`.
pub fn act_scaling(
    p: &EtaParameters,
    a: &Scalar,
    b: &Scalar,
) -> Result<EtaParameters, AutomorphismError> {
    if a.is_zero() || b.is_zero() {
        return Err(AutomorphismError::ZeroScaling);
    }
    let mut q = p.clone();
    let ab = a * b;
    let a2 = a * a;
    let b2 = b * b;
    let sc_v = |x: &Vec3<Scalar>, s: &Scalar| -> Vec3<Scalar> {
        std::array::from_fn(|i| &x[i] * s)
    };
    let sc_m = |x: &Mat3<Scalar>, s: &Scalar| -> Mat3<Scalar> {
        std::array::from_fn(|i| std::array::from_fn(|j| &x[i][j] * s))
    };
    q.alpha = sc_v(&p.alpha, &b.clone().recip());
    q.beta = &p.beta / b;
    q.gamma = sc_v(&p.gamma, &a.clone().recip());
    q.phi = sc_v(&p.phi, &ab.clone().recip());
    q.lambda = sc_v(&p.lambda, &a2.clone().recip());
    q.v_param = &p.v_param / &ab;
    q.xi = sc_v(&p.xi, &(&b2 / &a2));
    q.theta = &p.theta * &b2 / &a2;
    q.rho = &p.rho / a;
    q.sigma = sc_m(&p.sigma, &a.clone().recip());
    q.chi = sc_m(&p.chi, &(b / &a2));
    q.omega = sc_m(&p.omega, &(b / a));
    Ok(q)
}

/// Apply one automorphism element.
pub fn apply(p: &EtaParameters, e: &AutomorphismElement) -> Result<EtaParameters, AutomorphismError> {
    match e {
        AutomorphismElement::Boost { v } => Ok(act_boost(p, v)),
        AutomorphismElement::SpaceTranslation { a } => Ok(act_space_translation(p, a)),
        AutomorphismElement::TimeTranslation { t } => Ok(act_time_translation(p, t)),
        AutomorphismElement::Rotation { r } => act_rotation(p, r),
        AutomorphismElement::Scaling { a, b } => act_scaling(p, a, b),
    }
}

/// Apply a word of automorphism elements left-to-right.
pub fn apply_word(
    p: &EtaParameters,
    word: &[AutomorphismElement],
) -> Result<EtaParameters, AutomorphismError> {
    word.iter().try_fold(p.clone(), |acc, e| apply(&acc, e))
}

/// Witness checker: does applying `word` to `p1` yield exactly `p2`?
/// A word that fails a precondition (singular scaling, non-rotation matrix)
/// is not a witness, so the checker returns `false` rather than erroring.
pub fn verify_equivalence(
    p1: &EtaParameters,
    p2: &EtaParameters,
    word: &[AutomorphismElement],
) -> bool {
    match apply_word(p1, word) {
        Ok(q) => &q == p2,
        Err(_) => false,
    }
}

/// Convenience constructor for rotation elements from a Cayley parameter.
pub fn rotation_from_cayley(s: &Vec3<Scalar>) -> AutomorphismElement {
    AutomorphismElement::Rotation { r: cayley(s) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{check_cocycle_condition, check_dual_jacobi, dual_structure_constants};
    use crate::eta::check_cocycle;
    use crate::group::sample_group_element;
    use crate::linalg::zeros3;
    use crate::rng::SampleRng;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_parameters_act_trivially() {
        let mut rng = SampleRng::new(41);
        let p = crate::eta::sample_parameters(&mut rng, 3);
        assert_eq!(act_boost(&p, &zeros3()), p);
        assert_eq!(act_space_translation(&p, &zeros3()), p);
        assert_eq!(act_time_translation(&p, &Scalar::zero()), p);
        assert_eq!(act_rotation(&p, &id3()).unwrap(), p);
        assert_eq!(act_scaling(&p, &s(1), &s(1)).unwrap(), p);
    }

    #[test]
    fn boost_gamma_example() {
        let mut p = EtaParameters::default();
        p.beta = s(1);
        let q = act_boost(&p, &[s(1), s(0), s(0)]);
        assert_eq!(q.gamma, [s(-1), s(0), s(0)]);
    }

    #[test]
    fn space_translation_phi_example() {
        let mut p = EtaParameters::default();
        p.beta = s(1);
        let q = act_space_translation(&p, &[s(0), s(0), s(1)]);
        assert_eq!(q.phi, [s(0), s(0), s(-1)]);
    }

    #[test]
    fn time_translation_chi_example() {
        let mut p = EtaParameters::default();
        p.xi = [s(0), s(0), s(1)];
        let q = act_time_translation(&p, &s(1));
        assert_eq!(q.chi[0][1], s(2));
        assert_eq!(q.chi[1][0], s(-2));
    }

    #[test]
    fn rotation_example_and_precondition() {
        let mut p = EtaParameters::default();
        p.alpha = [s(0), s(0), s(1)];
        let r = cayley(&[s(1), s(0), s(0)]);
        let q = act_rotation(&p, &r).unwrap();
        assert_eq!(q.alpha, [s(0), s(1), s(0)]);
        let mut bad = id3::<Scalar>();
        bad[0][0] = s(2);
        assert_eq!(act_rotation(&p, &bad), Err(AutomorphismError::NotARotation));
    }

    #[test]
    fn scaling_example_and_composition() {
        let mut rng = SampleRng::new(42);
        let mut p = EtaParameters::default();
        p.xi = [s(0), s(0), s(1)];
        let q = act_scaling(&p, &s(2), &s(1)).unwrap();
        assert_eq!(q.xi, [s(0), s(0), Scalar::ratio(1, 4)]);
        assert!(act_scaling(&p, &s(0), &s(1)).is_err());
        let p = crate::eta::sample_parameters(&mut rng, 3);
        let (a, b) = (Scalar::ratio(2, 3), Scalar::ratio(-1, 2));
        let (a2, b2) = (Scalar::ratio(5, 7), Scalar::ratio(3, 4));
        let lhs = act_scaling(&act_scaling(&p, &a, &b).unwrap(), &a2, &b2).unwrap();
        let rhs = act_scaling(&p, &(&a * &a2), &(&b * &b2)).unwrap();
        assert_eq!(lhs, rhs);
        let t1 = Scalar::ratio(1, 3);
        let t2 = Scalar::ratio(-5, 2);
        assert_eq!(
            act_time_translation(&act_time_translation(&p, &t1), &t2),
            act_time_translation(&p, &(&t1 + &t2))
        );
    }

    #[test]
    fn actions_preserve_validity() {
        // a structure that passes cocycle + dual Jacobi stays passing
        let mut rng = SampleRng::new(43);
        let mut p = EtaParameters::default();
        p.alpha = rng.rational3(2);
        p.beta = Scalar::ratio(1, 2); // a point of the simplest family
        let words: Vec<AutomorphismElement> = vec![
            AutomorphismElement::Boost { v: rng.rational3(2) },
            AutomorphismElement::SpaceTranslation { a: rng.rational3(2) },
            AutomorphismElement::TimeTranslation { t: rng.rational(2) },
            rotation_from_cayley(&rng.rational3(2)),
            AutomorphismElement::Scaling { a: rng.rational_nonzero(2), b: rng.rational_nonzero(2) },
        ];
        for w in &words {
            let q = apply(&p, w).unwrap();
            let g1 = sample_group_element(&mut rng, 2);
            let g2 = sample_group_element(&mut rng, 2);
            assert!(check_cocycle(&q, &g1, &g2, crate::eta::Formula::Corrected).is_zero());
            assert!(check_dual_jacobi(&dual_structure_constants(&q)).is_empty());
            assert!(check_cocycle_condition(&q));
        }
    }

    #[test]
    fn equivalence_witness_checker() {
        let mut rng = SampleRng::new(44);
        let p = crate::eta::sample_parameters(&mut rng, 2);
        assert!(verify_equivalence(&p, &p, &[]));
        let word = vec![
            AutomorphismElement::TimeTranslation { t: Scalar::ratio(1, 2) },
            AutomorphismElement::Scaling { a: Scalar::from_int(2), b: Scalar::from_int(3) },
        ];
        let q = apply_word(&p, &word).unwrap();
        assert!(verify_equivalence(&p, &q, &word));
        assert!(!verify_equivalence(&p, &p, &word) || p == q);
        // a word with an invalid element is never a witness
        let bad = vec![AutomorphismElement::Scaling { a: Scalar::zero(), b: Scalar::one() }];
        assert!(!verify_equivalence(&p, &p, &bad));
    }

    #[test]
    fn traceless_parameters_stay_traceless() {
        let mut rng = SampleRng::new(45);
        let p = crate::eta::sample_parameters(&mut rng, 3);
        assert!(p.is_trace_gauged());
        assert!(act_boost(&p, &rng.rational3(3)).is_trace_gauged());
        assert!(act_space_translation(&p, &rng.rational3(3)).is_trace_gauged());
        assert!(act_time_translation(&p, &rng.rational(3)).is_trace_gauged());
        assert!(act_rotation(&p, &cayley(&rng.rational3(2))).unwrap().is_trace_gauged());
    }

    #[test]
    fn word_serialization_roundtrip() {
        let word = vec![
            AutomorphismElement::Boost { v: [s(1), s(0), Scalar::ratio(1, 2)] },
            AutomorphismElement::Scaling { a: s(2), b: s(3) },
        ];
        let j = serde_json::to_string(&word).unwrap();
        let back: Vec<AutomorphismElement> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, word);
    }
}
