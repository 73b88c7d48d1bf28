//! Lie bialgebra layer: the cobracket obtained by differentiating the
//! bivector field at the identity, its closed form, the induced dual Lie
//! algebra, and the two bialgebra axioms (cocycle condition and co-Jacobi).

use crate::dual::Dual;
use crate::eta::{eval_eta, EtaParameters, Formula};
use crate::group::{exp_generator, structure_constants, BASIS_NAMES, DIM};
use crate::linalg::{eps, kron, zeros10, Mat10};
use crate::scalar::Scalar;
use serde::Serialize;

/// Cobracket of the basis element with index `k`, computed numerically as the
/// exact derivative of the bivector field along `exp(s X_k)` at `s = 0`.
/// Returned as the antisymmetric coefficient matrix of an algebra bivector.
pub fn cobracket_numeric(p: &EtaParameters, k: usize) -> Mat10<Scalar> {
    let lifted = p.lift::<Dual<Scalar>>();
    let g = exp_generator(k, Dual::new(Scalar::zero(), Scalar::one()));
    let m = eval_eta(&lifted, &g, Formula::Corrected).to_matrix();
    (0..DIM)
        .map(|i| (0..DIM).map(|j| m[i][j].du.clone()).collect())
        .collect()
}

/// Block sign weight of the matrix entry `(i, j)` in the component basis: the
/// same weights used by the bivector matrix embedding.
fn block_weight(i: usize, j: usize) -> i64 {
    let (lo, hi) = (i.min(j), i.max(j));
    if lo == 0 {
        if hi < 4 {
            1 // Phi
        } else if hi < 7 {
            1 // Gamma
        } else {
            -1 // Psi
        }
    } else if lo < 4 {
        if hi < 4 {
            -1 // Lambda
        } else if hi < 7 {
            -1 // Upsilon
        } else {
            1 // Sigma
        }
    } else if lo < 7 {
        if hi < 7 {
            -1 // Xi
        } else {
            1 // Omega
        }
    } else {
        -1 // Pi
    }
}

/// Closed-form cobracket of basis element `k` as an antisymmetric coefficient
/// matrix. Agrees entry-by-entry with [`cobracket_numeric`] for every
/// parameter set.
pub fn cobracket_closed(p: &EtaParameters, which: usize) -> Mat10<Scalar> {
    assert!(which < DIM);
    let mut m: Mat10<Scalar> = zeros10();
    let f = Scalar::ratio;
    let s_ = Scalar::from_int;
    let wedge = |m: &mut Mat10<Scalar>, i: usize, j: usize, val: Scalar| {
        m[i][j] = &m[i][j] + &val;
        m[j][i] = &m[j][i] - &val;
    };
    let sig_nn = p.trace_sigma();
    let om_nn: Scalar = (0..3).fold(Scalar::zero(), |acc, i| acc + &p.omega[i][i]);
    match which {
        0 => {
            // time generator: sign-reversed transcription except the chi term
            for i in 0..3 {
                wedge(&mut m, 0, 1 + i, -&p.gamma[i]);
            }
            for j in 0..3 {
                for k in 0..3 {
                    wedge(&mut m, 1 + j, 1 + k, f(1, 2) * (&p.chi[k][j] - &p.chi[j][k]));
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    let mut x = Scalar::zero();
                    for k in 0..3 {
                        x = x + s_(2 * eps(i, j, k)) * &p.xi[k];
                    }
                    x = x - &p.theta * s_(kron(i, j));
                    wedge(&mut m, 1 + i, 4 + j, -x);
                    let y = s_(2) * &p.omega[j][i] - &om_nn * s_(kron(i, j));
                    wedge(&mut m, 1 + i, 7 + j, -y);
                }
            }
        }
        1..=3 => {
            let s = which - 1;
            for i in 0..3 {
                let mut x = &p.beta * s_(kron(i, s));
                for k in 0..3 {
                    x = x + s_(eps(i, k, s)) * &p.alpha[k];
                }
                wedge(&mut m, 0, 1 + i, x);
            }
            for j in 0..3 {
                for k in 0..3 {
                    let mut x = Scalar::zero();
                    for i in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            x = x + s_(e)
                                * (&p.rho * s_(kron(i, s)) - f(1, 2) * &sig_nn * s_(kron(i, s))
                                    + f(1, 2) * &p.sigma[s][i]);
                        }
                    }
                    wedge(&mut m, 1 + j, 1 + k, x);
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    let mut x = Scalar::zero();
                    for l in 0..3 {
                        x = x + s_(2 * eps(l, i, s)) * &p.omega[l][j];
                    }
                    x = x - s_(eps(j, i, s)) * &om_nn;
                    wedge(&mut m, 1 + i, 4 + j, x);
                    let y = s_(2) * (&p.n[i] * s_(kron(s, j)) - &p.n[s] * s_(kron(i, j)));
                    wedge(&mut m, 1 + i, 7 + j, y);
                }
            }
        }
        4..=6 => {
            let s = which - 4;
            for i in 0..3 {
                // the leading term pairs the time generator with a boost, not
                // a translation
                let mut x = &p.beta * s_(kron(i, s));
                for k in 0..3 {
                    x = x + s_(eps(i, k, s)) * &p.alpha[k];
                }
                wedge(&mut m, 0, 4 + i, x);
            }
            for j in 0..3 {
                for k in 0..3 {
                    let x = &p.v_param * s_(eps(s, j, k))
                        - f(1, 2) * (&p.phi[k] * s_(kron(j, s)) - &p.phi[j] * s_(kron(k, s)));
                    wedge(&mut m, 1 + j, 1 + k, x);
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    let mut x = &p.rho * s_(eps(i, j, s));
                    for k in 0..3 {
                        x = x - s_(eps(k, j, s)) * &p.sigma[i][k];
                    }
                    x = x - &p.gamma[j] * s_(kron(i, s));
                    wedge(&mut m, 1 + i, 4 + j, x);
                    let y = &p.beta * s_(eps(i, j, s)) + &p.alpha[j] * s_(kron(i, s));
                    wedge(&mut m, 1 + i, 7 + j, -y);
                }
            }
            for j in 0..3 {
                for k in 0..3 {
                    let mut x = Scalar::zero();
                    for i in 0..3 {
                        x = x + s_(eps(i, j, k)) * &p.omega[i][s];
                    }
                    wedge(&mut m, 4 + j, 4 + k, x);
                    let y = s_(2) * (&p.n[j] * s_(kron(s, k)) - &p.n[s] * s_(kron(j, k)));
                    wedge(&mut m, 4 + j, 7 + k, y);
                }
            }
        }
        _ => {
            // rotation generator: sign-reversed transcription, with chi in
            // place of the misprinted second rank-2 block
            let s = which - 7;
            for i in 0..3 {
                let mut x = Scalar::zero();
                let mut y = Scalar::zero();
                let mut z = Scalar::zero();
                for j in 0..3 {
                    x = x + s_(eps(s, i, j)) * &p.alpha[j];
                    y = y + s_(eps(s, i, j)) * &p.phi[j];
                    z = z + s_(eps(i, j, s)) * &p.gamma[j];
                }
                wedge(&mut m, 0, 7 + i, x);
                wedge(&mut m, 0, 1 + i, y);
                wedge(&mut m, 0, 4 + i, z);
            }
            for j in 0..3 {
                for k in 0..3 {
                    wedge(
                        &mut m,
                        1 + j,
                        1 + k,
                        &p.lambda[j] * s_(kron(k, s)) - &p.lambda[k] * s_(kron(j, s)),
                    );
                    wedge(
                        &mut m,
                        4 + j,
                        4 + k,
                        &p.xi[j] * s_(kron(k, s)) - &p.xi[k] * s_(kron(j, s)),
                    );
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    let mut x = Scalar::zero();
                    let mut y = Scalar::zero();
                    let mut z = Scalar::zero();
                    for k in 0..3 {
                        x = x + s_(eps(s, i, k)) * &p.chi[k][j] + s_(eps(s, j, k)) * &p.chi[i][k];
                        y = y + s_(eps(s, i, k)) * &p.sigma[k][j] + s_(eps(s, j, k)) * &p.sigma[i][k];
                        z = z + s_(2 * eps(s, i, k)) * &p.omega[j][k]
                            + s_(2 * eps(s, j, k)) * &p.omega[k][i];
                    }
                    wedge(&mut m, 1 + i, 4 + j, x);
                    wedge(&mut m, 1 + i, 7 + j, y);
                    wedge(&mut m, 4 + i, 7 + j, z);
                }
            }
            for k in 0..3 {
                wedge(&mut m, 7 + k, 7 + s, s_(2) * &p.n[k]);
            }
            for i in 0..DIM {
                for j in 0..DIM {
                    m[i][j] = -&m[i][j];
                }
            }
        }
    }
    // apply block sign weights
    for i in 0..DIM {
        for j in 0..DIM {
            if i != j {
                m[i][j] = Scalar::from_int(block_weight(i, j)) * &m[i][j];
            }
        }
    }
    m
}

/// Structure constants `f[i][j][m]` of the dual Lie algebra:
/// `[X~_i, X~_j] = f[i][j][m] X~_m`, obtained by pairing the closed-form
/// cobracket against the dual basis: `f[i][j][m]` is the `(i, j)` coefficient
/// of the cobracket of the `m`-th primal basis element.
pub fn dual_structure_constants(p: &EtaParameters) -> Vec<Vec<Vec<Scalar>>> {
    let dl: Vec<Mat10<Scalar>> = (0..DIM).map(|m| cobracket_closed(p, m)).collect();
    (0..DIM)
        .map(|i| {
            (0..DIM)
                .map(|j| (0..DIM).map(|m| dl[m][i][j].clone()).collect())
                .collect()
        })
        .collect()
}

/// Jacobi identity of the dual Lie algebra. Returns the list of basis triples
/// `(i, j, k)` where the Jacobiator has a nonzero component, with one sample
/// nonzero value each.
pub fn check_dual_jacobi(f: &[Vec<Vec<Scalar>>]) -> Vec<(usize, usize, usize, Scalar)> {
    let mut bad = Vec::new();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in (j + 1)..DIM {
                'outer: for m in 0..DIM {
                    let mut acc = Scalar::zero();
                    for l in 0..DIM {
                        acc = acc
                            + &f[i][j][l] * &f[l][k][m]
                            + &f[j][k][l] * &f[l][i][m]
                            + &f[k][i][l] * &f[l][j][m];
                    }
                    if !acc.is_zero() {
                        bad.push((i, j, k, acc));
                        break 'outer;
                    }
                }
            }
        }
    }
    bad
}

/// `(ad_x (x) 1 + 1 (x) ad_x)` applied to a bivector coefficient matrix,
/// for the basis element with index `x`.
fn ad_action_bivector(c: &[Vec<[i64; DIM]>], x: usize, m: &Mat10<Scalar>) -> Mat10<Scalar> {
    let mut r: Mat10<Scalar> = zeros10();
    for a in 0..DIM {
        for b in 0..DIM {
            if m[a][b].is_zero() {
                continue;
            }
            for k in 0..DIM {
                if c[x][a][k] != 0 {
                    r[k][b] = &r[k][b] + Scalar::from_int(c[x][a][k]) * &m[a][b];
                }
                if c[x][b][k] != 0 {
                    r[a][k] = &r[a][k] + Scalar::from_int(c[x][b][k]) * &m[a][b];
                }
            }
        }
    }
    r
}

/// The 1-cocycle condition of the cobracket with respect to the adjoint
/// action: `delta([x, y]) = ad_x . delta(y) - ad_y . delta(x)` for every pair
/// of basis elements. Holds for every parameter set.
pub fn check_cocycle_condition(p: &EtaParameters) -> bool {
    let c = structure_constants();
    let dl: Vec<Mat10<Scalar>> = (0..DIM).map(|k| cobracket_closed(p, k)).collect();
    for x in 0..DIM {
        for y in 0..DIM {
            let a = ad_action_bivector(&c, x, &dl[y]);
            let b = ad_action_bivector(&c, y, &dl[x]);
            for i in 0..DIM {
                for j in 0..DIM {
                    let mut lhs = Scalar::zero();
                    for k in 0..DIM {
                        if c[x][y][k] != 0 {
                            lhs = lhs + Scalar::from_int(c[x][y][k]) * &dl[k][i][j];
                        }
                    }
                    if !(lhs - &a[i][j] + &b[i][j]).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Co-Jacobi identity of the cobracket (equivalently, Jacobi for the dual
/// algebra). Holds exactly on the classified parameter varieties, not for
/// arbitrary parameters.
pub fn check_cojacobi(p: &EtaParameters) -> bool {
    let dl: Vec<Mat10<Scalar>> = (0..DIM).map(|k| cobracket_closed(p, k)).collect();
    for m in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let term = |i: usize, j: usize, k: usize| -> Scalar {
                        let mut acc = Scalar::zero();
                        for l in 0..DIM {
                            if !dl[l][i][j].is_zero() && !dl[m][l][k].is_zero() {
                                acc = acc + &dl[m][l][k] * &dl[l][i][j];
                            }
                        }
                        acc
                    };
                    if !(term(i, j, k) + term(j, k, i) + term(k, i, j)).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The six sufficient solution classes of the co-Jacobi constraint system,
/// in the order they are stated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintClass {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// Report every constraint class (a)-(f) that a parameter set satisfies.
/// Returns the empty list when `n` is nonzero (the classes all assume
/// `n = 0`) or when no class matches.
pub fn classify_constraint_family(p: &EtaParameters) -> Vec<ConstraintClass> {
    use crate::linalg::{cross3, dot3, Vec3};
    let mut out = Vec::new();
    let s = Scalar::from_int;
    if !p.n.iter().all(Scalar::is_zero) {
        return out;
    }
    let alpha_zero = p.alpha.iter().all(Scalar::is_zero);
    let beta_zero = p.beta.is_zero();
    let omega_zero = p.omega.iter().all(|r| r.iter().all(Scalar::is_zero));
    let xi_zero = p.xi.iter().all(Scalar::is_zero);
    let parallel = |x: &Vec3<Scalar>, y: &Vec3<Scalar>| -> bool {
        cross3(x, y).iter().all(Scalar::is_zero)
    };
    // (a) beta free, no quadratic sources
    if !p.beta.is_zero() && xi_zero && omega_zero {
        out.push(ConstraintClass::A);
    }
    // (b) omega = W (alpha^2 I - alpha alpha^T) with W != 0,
    //     xi - W alpha x gamma parallel to alpha
    if !alpha_zero && beta_zero {
        let a2 = dot3(&p.alpha, &p.alpha);
        if !a2.is_zero() {
            let tr: Scalar = (0..3).fold(Scalar::zero(), |acc, i| acc + &p.omega[i][i]);
            let w = &tr / (s(2) * &a2);
            if !w.is_zero() {
                let matches = (0..3).all(|i| {
                    (0..3).all(|j| {
                        p.omega[i][j]
                            == &w * (&a2 * s(kron(i, j)) - &p.alpha[i] * &p.alpha[j])
                    })
                });
                if matches {
                    let axg = cross3(&p.alpha, &p.gamma);
                    let rem: Vec3<Scalar> =
                        std::array::from_fn(|i| &p.xi[i] - &w * &axg[i]);
                    if parallel(&rem, &p.alpha) {
                        out.push(ConstraintClass::B);
                    }
                }
            }
        }
    }
    // (c) alpha = 0: omega = W (I - mu mu^T) + V eps.mu for a unit direction
    //     mu, with gamma parallel to mu when (W, V) != 0. The axis is
    //     recovered from omega itself: the symmetric part is W times a rank-
    //     one-complement projector, the antisymmetric part has axial vector
    //     V mu, and parallelism tests use the projector so mu is never
    //     extracted componentwise.
    if alpha_zero && beta_zero {
        let mut ok = omega_zero;
        if !ok {
            let sym: crate::linalg::Mat3<Scalar> = std::array::from_fn(|i| {
                std::array::from_fn(|j| (&p.omega[i][j] + &p.omega[j][i]) / s(2))
            });
            let anti: Vec3<Scalar> = std::array::from_fn(|i| {
                let mut acc = Scalar::zero();
                for j in 0..3 {
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            acc = acc + Scalar::ratio(e, 2) * &p.omega[j][k];
                        }
                    }
                }
                acc
            });
            let sym_zero = sym.iter().all(|r| r.iter().all(Scalar::is_zero));
            let tr: Scalar = (0..3).fold(Scalar::zero(), |acc, i| acc + &sym[i][i]);
            let w = &tr / s(2);
            if !w.is_zero() {
                // m = I - sym / W must be the projector mu mu^T
                let m: crate::linalg::Mat3<Scalar> = std::array::from_fn(|i| {
                    std::array::from_fn(|j| s(kron(i, j)) - &sym[i][j] / &w)
                });
                let m_tr: Scalar = (0..3).fold(Scalar::zero(), |acc, i| acc + &m[i][i]);
                let idempotent = (0..3).all(|i| {
                    (0..3).all(|j| {
                        (0..3).fold(Scalar::zero(), |acc, k| acc + &m[i][k] * &m[k][j])
                            == m[i][j]
                    })
                });
                if m_tr == s(1) && idempotent {
                    let fixed = |x: &Vec3<Scalar>| {
                        (0..3).all(|i| {
                            (0..3).fold(Scalar::zero(), |acc, j| acc + &m[i][j] * &x[j])
                                == x[i]
                        })
                    };
                    // the axial vector V mu and gamma must both lie on the axis
                    if fixed(&anti) && fixed(&p.gamma) {
                        ok = true;
                    }
                }
            } else if sym_zero && !anti.iter().all(Scalar::is_zero) {
                // W = 0: omega = V eps.mu with V != 0 and axis along the
                // axial vector; gamma must be parallel to it
                if parallel(&p.gamma, &anti) {
                    ok = true;
                }
            }
        }
        if ok {
            out.push(ConstraintClass::C);
        }
    }
    // (d) omega = W I with W != 0 and gamma = (alpha x xi) / W
    if !alpha_zero && beta_zero {
        let w = p.omega[0][0].clone();
        let diag = (0..3).all(|i| {
            (0..3).all(|j| p.omega[i][j] == if i == j { w.clone() } else { Scalar::zero() })
        });
        if !w.is_zero() && diag {
            let axx = cross3(&p.alpha, &p.xi);
            if (0..3).all(|i| &axx[i] / &w == p.gamma[i]) {
                out.push(ConstraintClass::D);
            }
        }
    }
    // (e) omega = 0, xi parallel to alpha, gamma orthogonal to alpha
    if !alpha_zero && beta_zero && omega_zero {
        if parallel(&p.xi, &p.alpha) && dot3(&p.gamma, &p.alpha).is_zero() {
            out.push(ConstraintClass::E);
        }
    }
    // (f) alpha = gamma = 0 and omega proportional to the identity
    if alpha_zero && beta_zero && p.gamma.iter().all(Scalar::is_zero) {
        let w = p.omega[0][0].clone();
        if (0..3).all(|i| {
            (0..3).all(|j| p.omega[i][j] == if i == j { w.clone() } else { Scalar::zero() })
        }) {
            out.push(ConstraintClass::F);
        }
    }
    out
}

/// One nonzero dual structure constant, for JSON export.
#[derive(Serialize)]
pub struct DualConstantEntry {
    pub i: String,
    pub j: String,
    pub k: String,
    pub value: Scalar,
}

/// Flatten the dual structure constants to their nonzero entries with named
/// basis elements, suitable for export.
pub fn dual_constants_nonzero(f: &[Vec<Vec<Scalar>>]) -> Vec<DualConstantEntry> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in 0..DIM {
                if !f[i][j][k].is_zero() {
                    out.push(DualConstantEntry {
                        i: BASIS_NAMES[i].to_string(),
                        j: BASIS_NAMES[j].to_string(),
                        k: BASIS_NAMES[k].to_string(),
                        value: f[i][j][k].clone(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;

    use crate::eta::sample_parameters as random_params;

    #[test]
    fn closed_cobracket_matches_numeric() {
        let mut rng = SampleRng::new(31);
        for _ in 0..3 {
            let p = random_params(&mut rng, 3);
            for k in 0..DIM {
                assert_eq!(cobracket_closed(&p, k), cobracket_numeric(&p, k), "generator {k}");
            }
        }
    }

    #[test]
    fn dual_constants_match_cobracket() {
        let mut rng = SampleRng::new(32);
        let p = random_params(&mut rng, 3);
        let dl: Vec<Mat10<Scalar>> = (0..DIM).map(|k| cobracket_numeric(&p, k)).collect();
        let f = dual_structure_constants(&p);
        for i in 0..DIM {
            for j in 0..DIM {
                for m in 0..DIM {
                    assert_eq!(f[i][j][m], dl[m][i][j], "({i},{j},{m})");
                }
            }
        }
    }

    #[test]
    fn cocycle_condition_holds_universally() {
        let mut rng = SampleRng::new(33);
        for _ in 0..2 {
            let p = random_params(&mut rng, 2);
            assert!(check_cocycle_condition(&p));
        }
    }

    #[test]
    fn cojacobi_fails_generically() {
        let mut rng = SampleRng::new(34);
        let mut any_fail = false;
        for _ in 0..3 {
            let p = random_params(&mut rng, 2);
            if !check_cojacobi(&p) {
                any_fail = true;
            }
        }
        assert!(any_fail);
    }

    #[test]
    fn cojacobi_holds_for_zero_params() {
        assert!(check_cojacobi(&EtaParameters::default()));
    }
}
