//! The multiplicative bivector field: parameter set, evaluation of the
//! general cocycle solution, and exact verification of the cocycle identity,
//! the subgroup restrictions, and the pointwise Jacobi identity.
//!
//! The evaluator implements the closed-form general solution with a small set
//! of documented corrections (see `docs/CORRECTIONS.md`); the original
//! transcription is kept available behind [`Formula::Printed`] so the failing
//! terms can be demonstrated rather than silently patched.

use crate::bivector::Bivector;
use crate::dual::Dual;
use crate::group::{
    adjoint, compose, exp_generator, structure_constants, GroupElement, DIM,
};
use crate::linalg::{eps, id3, kron, mat10_sub, sandwich10, zeros3, zmat3, Mat10, Mat3, Vec3};
use crate::scalar::{Ring, Scalar};
use serde::{Deserialize, Serialize};

/// Which transcription of the closed-form solution to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Formula {
    /// The corrected transcription: satisfies the cocycle identity exactly.
    #[default]
    Corrected,
    /// The verbatim original. Three monomials differ from [`Formula::Corrected`]
    /// and break the cocycle identity whenever `n` or `omega` is nonzero.
    Printed,
}

/// The full parameter set of the general solution.
///
/// `sigma` and `chi` are traceless by convention (the trace part of the
/// `P`-`J` sector lives in `rho`); constructors enforce it, deserialization
/// rejects violations.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaParameters {
    pub alpha: Vec3<Scalar>,
    pub beta: Scalar,
    pub gamma: Vec3<Scalar>,
    pub phi: Vec3<Scalar>,
    pub lambda: Vec3<Scalar>,
    pub v_param: Scalar,
    pub xi: Vec3<Scalar>,
    pub theta: Scalar,
    pub rho: Scalar,
    pub sigma: Mat3<Scalar>,
    pub chi: Mat3<Scalar>,
    pub omega: Mat3<Scalar>,
    pub n: Vec3<Scalar>,
}

impl Default for EtaParameters {
    fn default() -> Self {
        EtaParameters {
            alpha: zeros3(),
            beta: Scalar::zero(),
            gamma: zeros3(),
            phi: zeros3(),
            lambda: zeros3(),
            v_param: Scalar::zero(),
            xi: zeros3(),
            theta: Scalar::zero(),
            rho: Scalar::zero(),
            sigma: zmat3(),
            chi: zmat3(),
            omega: zmat3(),
            n: zeros3(),
        }
    }
}

impl EtaParameters {
    pub fn trace_sigma(&self) -> Scalar {
        (0..3).fold(Scalar::zero(), |acc, i| acc + &self.sigma[i][i])
    }
    pub fn trace_chi(&self) -> Scalar {
        (0..3).fold(Scalar::zero(), |acc, i| acc + &self.chi[i][i])
    }
    pub fn is_trace_gauged(&self) -> bool {
        self.trace_sigma().is_zero() && self.trace_chi().is_zero()
    }

    /// Lift every parameter into another coefficient ring (as constants).
    pub fn lift<T: Ring>(&self) -> EtaLifted<T> {
        let v3 = |x: &Vec3<Scalar>| -> Vec3<T> {
            std::array::from_fn(|i| T::from_scalar(&x[i]))
        };
        let m3 = |x: &Mat3<Scalar>| -> Mat3<T> {
            std::array::from_fn(|i| std::array::from_fn(|j| T::from_scalar(&x[i][j])))
        };
        EtaLifted {
            alpha: v3(&self.alpha),
            beta: T::from_scalar(&self.beta),
            gamma: v3(&self.gamma),
            phi: v3(&self.phi),
            lambda: v3(&self.lambda),
            v_param: T::from_scalar(&self.v_param),
            xi: v3(&self.xi),
            theta: T::from_scalar(&self.theta),
            rho: T::from_scalar(&self.rho),
            sigma: m3(&self.sigma),
            chi: m3(&self.chi),
            omega: m3(&self.omega),
            n: v3(&self.n),
        }
    }
}

/// Parameters lifted into an arbitrary coefficient ring, so the evaluator can
/// run on dual numbers (exact differentiation) as well as plain rationals.
#[derive(Clone, Debug)]
pub struct EtaLifted<T> {
    pub alpha: Vec3<T>,
    pub beta: T,
    pub gamma: Vec3<T>,
    pub phi: Vec3<T>,
    pub lambda: Vec3<T>,
    pub v_param: T,
    pub xi: Vec3<T>,
    pub theta: T,
    pub rho: T,
    pub sigma: Mat3<T>,
    pub chi: Mat3<T>,
    pub omega: Mat3<T>,
    pub n: Vec3<T>,
}

/// Evaluate the bivector field at a group point: the nine component blocks of
/// the general cocycle solution.
pub fn eval_eta<T: Ring>(
    p: &EtaLifted<T>,
    g: &GroupElement<T>,
    formula: Formula,
) -> Bivector<T> {
    let corrected = formula == Formula::Corrected;
    let t = &g.t;
    let a = &g.a;
    let v = &g.v;
    let r = &g.r;
    let ti = |n: i64| T::from_int(n);
    let tf = |n: i64, d: i64| T::frac(n, d);

    let sig_nn = (0..3).fold(T::zero(), |acc, i| acc + p.sigma[i][i].clone());
    let om_nn = (0..3).fold(T::zero(), |acc, i| acc + p.omega[i][i].clone());
    let u: Vec3<T> = std::array::from_fn(|i| a[i].clone() - v[i].clone() * t.clone());
    let v2 = (0..3).fold(T::zero(), |acc, i| acc + v[i].clone() * v[i].clone());

    let psi: Vec3<T> = std::array::from_fn(|i| {
        (0..3).fold(T::zero(), |acc, j| {
            acc + (r[i][j].clone() - ti(kron(i, j))) * p.alpha[j].clone()
        })
    });

    let phi: Vec3<T> = std::array::from_fn(|i| {
        let mut x = T::zero();
        for j in 0..3 {
            x = x + (r[i][j].clone() - ti(kron(i, j))) * p.phi[j].clone();
        }
        x = x + p.beta.clone() * u[i].clone();
        let mut gr = T::zero();
        for j in 0..3 {
            gr = gr + p.gamma[j].clone() * r[i][j].clone();
        }
        x = x - gr * t.clone();
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    for l in 0..3 {
                        x = x + ti(e) * p.alpha[l].clone() * r[j][l].clone() * u[k].clone();
                    }
                }
            }
        }
        x
    });

    let gamma: Vec3<T> = std::array::from_fn(|i| {
        let mut x = T::zero();
        for j in 0..3 {
            x = x + (r[i][j].clone() - ti(kron(i, j))) * p.gamma[j].clone();
        }
        x = x + p.beta.clone() * v[i].clone();
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    for l in 0..3 {
                        x = x + ti(e) * p.alpha[l].clone() * r[j][l].clone() * v[k].clone();
                    }
                }
            }
        }
        x
    });

    let lambda: Vec3<T> = std::array::from_fn(|i| {
        let mut x = T::zero();
        for j in 0..3 {
            x = x + (r[i][j].clone() - ti(kron(i, j))) * p.lambda[j].clone();
        }
        x = x + (p.rho.clone() - tf(1, 2) * sig_nn.clone()) * u[i].clone();
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    x = x + tf(e, 2) * p.beta.clone() * a[j].clone() * v[k].clone();
                    for l in 0..3 {
                        x = x + tf(e, 2) * p.phi[l].clone() * r[j][l].clone() * v[k].clone();
                        x = x - tf(e, 2)
                            * p.gamma[l].clone()
                            * r[j][l].clone()
                            * v[k].clone()
                            * t.clone();
                    }
                }
            }
        }
        let av_minus_v2t = {
            let mut s = T::zero();
            for k in 0..3 {
                s = s + a[k].clone() * v[k].clone();
            }
            s - v2.clone() * t.clone()
        };
        let mut ar = T::zero();
        for j in 0..3 {
            ar = ar + p.alpha[j].clone() * r[i][j].clone();
        }
        x = x - tf(1, 2) * ar * av_minus_v2t;
        let mut arv = T::zero();
        for j in 0..3 {
            for k in 0..3 {
                arv = arv + p.alpha[j].clone() * r[k][j].clone() * v[k].clone();
            }
        }
        x = x + tf(1, 2) * arv * u[i].clone();
        let mut xr = T::zero();
        for j in 0..3 {
            xr = xr + p.xi[j].clone() * r[i][j].clone();
        }
        x = x + xr * t.clone() * t.clone();
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let e = eps(j, k, l);
                    if e != 0 {
                        x = x - tf(e, 2) * p.chi[k][l].clone() * r[i][j].clone() * t.clone();
                    }
                }
            }
        }
        let mut om_a = T::zero();
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    om_a = om_a
                        + p.omega[j][l].clone() * r[i][j].clone() * r[k][l].clone() * a[k].clone();
                }
            }
        }
        x = x - om_a * t.clone();
        x = x + p.v_param.clone() * v[i].clone();
        // sigma contribution: transposed index placement (the original prints a
        // repeated index here; this is the unique placement satisfying the
        // cocycle identity)
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    x = x + tf(1, 2)
                        * p.sigma[l][j].clone()
                        * r[i][j].clone()
                        * r[k][l].clone()
                        * u[k].clone();
                }
            }
        }
        for k in 0..3 {
            for m in 0..3 {
                let quad = if corrected {
                    a[i].clone() * a[m].clone()
                        + v[m].clone() * v[i].clone() * t.clone() * t.clone()
                } else {
                    a[i].clone() * a[m].clone()
                        + ti(2) * v[m].clone() * v[i].clone() * t.clone()
                };
                x = x + p.n[k].clone() * r[m][k].clone() * quad;
            }
        }
        let mut nv = T::zero();
        for k in 0..3 {
            for l in 0..3 {
                nv = nv
                    + p.n[l].clone()
                        * (a[k].clone() * r[k][l].clone() * v[i].clone()
                            + a[i].clone() * r[k][l].clone() * v[k].clone());
            }
        }
        x = x - nv * t.clone();
        if corrected {
            let mut om_v = T::zero();
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        om_v = om_v
                            + p.omega[j][l].clone()
                                * r[i][j].clone()
                                * r[k][l].clone()
                                * v[k].clone();
                    }
                }
            }
            x = x + om_v * t.clone() * t.clone();
        }
        x
    });

    let upsilon: Mat3<T> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut x = T::zero();
            for k in 0..3 {
                for l in 0..3 {
                    x = x + (r[i][k].clone() * r[j][l].clone()
                        - ti(kron(i, k) * kron(j, l)))
                        * p.chi[k][l].clone();
                }
            }
            x = x + ti(kron(i, j)) * p.theta.clone() * t.clone();
            x = x - tf(kron(i, j), 2) * p.beta.clone() * v2.clone();
            for k in 0..3 {
                for l in 0..3 {
                    let e = eps(j, k, l);
                    if e != 0 {
                        for nn in 0..3 {
                            x = x + ti(e)
                                * p.alpha[nn].clone()
                                * r[l][nn].clone()
                                * v[k].clone()
                                * v[i].clone();
                        }
                        for nn in 0..3 {
                            for s in 0..3 {
                                x = x - ti(e)
                                    * p.sigma[nn][s].clone()
                                    * r[i][nn].clone()
                                    * r[l][s].clone()
                                    * v[k].clone();
                            }
                        }
                    }
                }
            }
            let mut gr = T::zero();
            for k in 0..3 {
                gr = gr + p.gamma[k].clone() * r[j][k].clone();
            }
            x = x - gr * v[i].clone();
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    for l in 0..3 {
                        x = x - ti(2 * e) * p.xi[l].clone() * r[k][l].clone() * t.clone();
                    }
                    x = x + ti(e) * p.rho.clone() * v[k].clone();
                    x = x + ti(e) * om_nn.clone() * a[k].clone();
                }
            }
            for nn in 0..3 {
                for s in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            let e1 = eps(i, k, l);
                            if e1 != 0 {
                                x = x + ti(2 * e1)
                                    * p.omega[nn][s].clone()
                                    * r[j][s].clone()
                                    * r[l][nn].clone()
                                    * a[k].clone();
                            }
                            let e2 = eps(i, j, l);
                            if e2 != 0 {
                                x = x - ti(2 * e2)
                                    * p.omega[nn][s].clone()
                                    * r[k][s].clone()
                                    * r[l][nn].clone()
                                    * v[k].clone()
                                    * t.clone();
                            }
                        }
                    }
                }
            }
            for k in 0..3 {
                for l in 0..3 {
                    for nn in 0..3 {
                        let e = eps(k, i, nn);
                        if e == 0 {
                            continue;
                        }
                        let delta = if corrected { kron(j, k) } else { kron(i, k) };
                        let mut rv = T::zero();
                        for m in 0..3 {
                            rv = rv + r[m][l].clone() * v[m].clone();
                        }
                        x = x + ti(2 * e)
                            * p.n[l].clone()
                            * (r[j][l].clone() * v[k].clone() - rv * ti(delta))
                            * a[nn].clone();
                    }
                }
            }
            for k in 0..3 {
                for m in 0..3 {
                    for s in 0..3 {
                        let e = eps(s, i, j);
                        if e != 0 {
                            x = x - ti(2 * e)
                                * p.n[k].clone()
                                * v[s].clone()
                                * v[m].clone()
                                * r[m][k].clone()
                                * t.clone();
                        }
                    }
                }
            }
            if !corrected {
                let mut om_v = T::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        for nn in 0..3 {
                            om_v = om_v
                                + p.omega[l][k].clone()
                                    * r[nn][k].clone()
                                    * r[i][l].clone()
                                    * v[nn].clone();
                        }
                    }
                }
                x = x + om_v * t.clone() * t.clone();
            }
            x
        })
    });

    let sigma: Mat3<T> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut x = T::zero();
            for k in 0..3 {
                for l in 0..3 {
                    x = x + (r[i][k].clone() * r[j][l].clone()
                        - ti(kron(i, k) * kron(j, l)))
                        * p.sigma[k][l].clone();
                }
            }
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    x = x - ti(e) * p.beta.clone() * v[k].clone();
                }
            }
            let mut ar = T::zero();
            for k in 0..3 {
                ar = ar + p.alpha[k].clone() * r[j][k].clone();
            }
            x = x - ar * v[i].clone();
            let mut om_rr = T::zero();
            for k in 0..3 {
                for l in 0..3 {
                    om_rr = om_rr + p.omega[l][k].clone() * r[i][k].clone() * r[j][l].clone();
                }
            }
            x = x - ti(2) * om_rr * t.clone();
            x = x + om_nn.clone() * ti(kron(i, j)) * t.clone();
            for k in 0..3 {
                let mut ra = T::zero();
                let mut rv = T::zero();
                for m in 0..3 {
                    ra = ra + r[m][k].clone() * a[m].clone();
                    rv = rv + r[m][k].clone() * v[m].clone();
                }
                x = x + ti(2)
                    * p.n[k].clone()
                    * (r[i][k].clone() * a[j].clone() - ra * ti(kron(i, j))
                        - r[i][k].clone() * v[j].clone() * t.clone()
                        + rv * ti(kron(i, j)) * t.clone());
            }
            x
        })
    });

    let xi: Vec3<T> = std::array::from_fn(|i| {
        let mut x = T::zero();
        for j in 0..3 {
            x = x + (r[i][j].clone() - ti(kron(i, j))) * p.xi[j].clone();
        }
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    x = x + p.omega[j][l].clone()
                        * r[i][j].clone()
                        * r[k][l].clone()
                        * v[k].clone();
                }
            }
        }
        let mut nrv = T::zero();
        for k in 0..3 {
            for m in 0..3 {
                nrv = nrv + p.n[k].clone() * r[m][k].clone() * v[m].clone();
            }
        }
        x + nrv * v[i].clone()
    });

    let omega: Mat3<T> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut x = T::zero();
            for k in 0..3 {
                for l in 0..3 {
                    x = x + ti(2)
                        * (r[i][k].clone() * r[j][l].clone() - ti(kron(i, k) * kron(j, l)))
                        * p.omega[l][k].clone();
                }
            }
            for k in 0..3 {
                let mut rv = T::zero();
                for m in 0..3 {
                    rv = rv + r[m][k].clone() * v[m].clone();
                }
                x = x + ti(2)
                    * p.n[k].clone()
                    * (r[i][k].clone() * v[j].clone() - rv * ti(kron(i, j)));
            }
            x
        })
    });

    let pi: Vec3<T> = std::array::from_fn(|i| {
        (0..3).fold(T::zero(), |acc, j| {
            acc + (r[i][j].clone() - ti(kron(i, j))) * p.n[j].clone()
        })
    });

    Bivector { psi, phi, gamma, lambda, upsilon, sigma, xi, omega, pi }
}

/// Convenience: the antisymmetric matrix form of the field at `g`.
pub fn eval_eta_matrix(p: &EtaParameters, g: &GroupElement<Scalar>, formula: Formula) -> Mat10<Scalar> {
    eval_eta(&p.lift::<Scalar>(), g, formula).to_matrix()
}

/// Multiplicative-cocycle residual `eta(g1 g2) - eta(g1) - Ad(g1) eta(g2)`.
/// Exactly zero for every parameter set under [`Formula::Corrected`].
pub fn check_cocycle(
    p: &EtaParameters,
    g1: &GroupElement<Scalar>,
    g2: &GroupElement<Scalar>,
    formula: Formula,
) -> Bivector<Scalar> {
    let m12 = eval_eta_matrix(p, &compose(g1, g2), formula);
    let m1 = eval_eta_matrix(p, g1, formula);
    let m2 = eval_eta_matrix(p, g2, formula);
    let conj = sandwich10(&adjoint(g1), &m2);
    let res = mat10_sub(&mat10_sub(&m12, &m1), &conj);
    Bivector::from_matrix(&res)
}

/// Same residual for the deliberately corrupted field whose `Psi` block is the
/// constant `alpha` instead of `(R - I) alpha`: the standard negative control
/// for the cocycle checker.
pub fn check_cocycle_broken_psi(
    p: &EtaParameters,
    g1: &GroupElement<Scalar>,
    g2: &GroupElement<Scalar>,
) -> Bivector<Scalar> {
    let broken = |g: &GroupElement<Scalar>| -> Mat10<Scalar> {
        let mut b = eval_eta(&p.lift::<Scalar>(), g, Formula::Corrected);
        b.psi = p.alpha.clone();
        b.to_matrix()
    };
    let m12 = broken(&compose(g1, g2));
    let m1 = broken(g1);
    let conj = sandwich10(&adjoint(g1), &broken(g2));
    Bivector::from_matrix(&mat10_sub(&mat10_sub(&m12, &m1), &conj))
}

/// One-parameter subgroups of the group used by the subgroup restrictions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subgroup {
    Time,
    Space,
    Boost,
    Rotation,
}

#[derive(Debug, thiserror::Error)]
#[error("group element does not lie in the {0:?} subgroup")]
pub struct NotInSubgroup(pub Subgroup);

fn in_subgroup(g: &GroupElement<Scalar>, s: Subgroup) -> bool {
    let t0 = g.t.is_zero();
    let a0 = g.a.iter().all(Scalar::is_zero);
    let v0 = g.v.iter().all(Scalar::is_zero);
    let r1 = g.r == id3();
    match s {
        Subgroup::Time => a0 && v0 && r1,
        Subgroup::Space => t0 && v0 && r1,
        Subgroup::Boost => t0 && a0 && r1,
        Subgroup::Rotation => t0 && a0 && v0,
    }
}

/// Check that the field restricted to one of the four one-parameter subgroups
/// matches the closed polynomial form dictated by the subgroup cocycle
/// equations, with all constants read off from `p`:
/// on boosts `Psi = Phi = Pi = 0` with linear/quadratic structure below, on
/// space translations `Psi = Gamma = Xi = Omega = Pi = 0`, on time
/// translations every block is polynomial in `t` with the cross-tied
/// coefficients, and on rotations every block has the twisted-coboundary shape
/// `(R x ... x R - 1) . constant`.
pub fn check_subgroup_solution(
    p: &EtaParameters,
    subgroup: Subgroup,
    g: &GroupElement<Scalar>,
) -> Result<bool, NotInSubgroup> {
    if !in_subgroup(g, subgroup) {
        return Err(NotInSubgroup(subgroup));
    }
    let got = eval_eta(&p.lift::<Scalar>(), g, Formula::Corrected);
    let want = expected_on_subgroup(p, subgroup, g);
    Ok(got.sub(&want).is_zero())
}

/// The closed-form restriction of the field to each subgroup, written
/// independently of the evaluator (polynomials in the subgroup coordinate with
/// coefficients assembled directly from `p`).
fn expected_on_subgroup(
    p: &EtaParameters,
    subgroup: Subgroup,
    g: &GroupElement<Scalar>,
) -> Bivector<Scalar> {
    let mut b = Bivector::<Scalar>::zero();
    let s = Scalar::from_int;
    let f = Scalar::ratio;
    match subgroup {
        Subgroup::Time => {
            let t = &g.t;
            let sig_nn = p.trace_sigma();
            let om_nn = (0..3).fold(Scalar::zero(), |acc, i| acc + &p.omega[i][i]);
            let _ = sig_nn;
            for i in 0..3 {
                b.phi[i] = -&p.gamma[i] * t;
                let mut lam = &p.xi[i] * t * t;
                for k in 0..3 {
                    for l in 0..3 {
                        let e = eps(i, k, l);
                        if e != 0 {
                            lam = lam - f(e, 2) * &p.chi[k][l] * t;
                        }
                    }
                }
                b.lambda[i] = lam;
                for j in 0..3 {
                    let mut ups = Scalar::zero();
                    if i == j {
                        ups = ups + &p.theta * t;
                    }
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            ups = ups - s(2 * e) * &p.xi[k] * t;
                        }
                    }
                    b.upsilon[i][j] = ups;
                    let mut sg = s(-2) * &p.omega[j][i] * t;
                    if i == j {
                        sg = sg + &om_nn * t;
                    }
                    b.sigma[i][j] = sg;
                }
            }
        }
        Subgroup::Boost => {
            let v = &g.v;
            let v2 = (0..3).fold(Scalar::zero(), |acc, i| acc + &v[i] * &v[i]);
            for i in 0..3 {
                let mut gam = &p.beta * &v[i];
                for j in 0..3 {
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            gam = gam + s(e) * &p.alpha[j] * &v[k];
                        }
                    }
                }
                b.gamma[i] = gam;
                let mut lam = &p.v_param * &v[i];
                for j in 0..3 {
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            lam = lam + f(e, 2) * &p.phi[j] * &v[k];
                        }
                    }
                }
                b.lambda[i] = lam;
                let mut xi = Scalar::zero();
                for l in 0..3 {
                    xi = xi + &p.omega[i][l] * &v[l];
                }
                let nv = (0..3).fold(Scalar::zero(), |acc, k| acc + &p.n[k] * &v[k]);
                b.xi[i] = xi + &nv * &v[i];
                for j in 0..3 {
                    let mut ups = Scalar::zero();
                    if i == j {
                        ups = ups - f(1, 2) * &p.beta * &v2;
                    }
                    for k in 0..3 {
                        for l in 0..3 {
                            let e = eps(j, k, l);
                            if e != 0 {
                                ups = ups + s(e) * &v[k] * &p.alpha[l] * &v[i];
                                ups = ups - s(e) * &p.sigma[i][l] * &v[k];
                            }
                        }
                        let e = eps(i, j, k);
                        if e != 0 {
                            ups = ups + s(e) * &p.rho * &v[k];
                        }
                    }
                    ups = ups - &p.gamma[j] * &v[i];
                    b.upsilon[i][j] = ups;
                    let mut sg = -&p.alpha[j] * &v[i];
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            sg = sg - s(e) * &p.beta * &v[k];
                        }
                    }
                    b.sigma[i][j] = sg;
                    let mut om = s(2) * &p.n[i] * &v[j];
                    if i == j {
                        om = om - s(2) * &nv;
                    }
                    b.omega[i][j] = om;
                }
            }
        }
        Subgroup::Space => {
            let a = &g.a;
            let na = (0..3).fold(Scalar::zero(), |acc, k| acc + &p.n[k] * &a[k]);
            for i in 0..3 {
                let mut ph = &p.beta * &a[i];
                for j in 0..3 {
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            ph = ph + s(e) * &p.alpha[j] * &a[k];
                        }
                    }
                }
                b.phi[i] = ph;
                let mut lam = &p.rho * &a[i] + &na * &a[i];
                for l in 0..3 {
                    lam = lam + Scalar::ratio(1, 2) * &p.sigma[l][i] * &a[l];
                }
                b.lambda[i] = lam;
                for j in 0..3 {
                    let mut ups = Scalar::zero();
                    let om_nn = (0..3).fold(Scalar::zero(), |acc, q| acc + &p.omega[q][q]);
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            ups = ups + s(e) * &om_nn * &a[k];
                        }
                        for l in 0..3 {
                            let e2 = eps(i, k, l);
                            if e2 != 0 {
                                ups = ups + s(2 * e2) * &p.omega[l][j] * &a[k];
                            }
                        }
                    }
                    b.upsilon[i][j] = ups;
                    let mut sg = s(2) * &p.n[i] * &a[j];
                    if i == j {
                        sg = sg - s(2) * &na;
                    }
                    b.sigma[i][j] = sg;
                }
            }
        }
        Subgroup::Rotation => {
            let r = &g.r;
            let dv = |x: &Vec3<Scalar>| -> Vec3<Scalar> {
                std::array::from_fn(|i| {
                    (0..3).fold(Scalar::zero(), |acc, j| {
                        acc + (&r[i][j] - Scalar::from_int(kron(i, j))) * &x[j]
                    })
                })
            };
            let dm = |x: &Mat3<Scalar>, scale: i64| -> Mat3<Scalar> {
                std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        let mut acc = Scalar::zero();
                        for k in 0..3 {
                            for l in 0..3 {
                                acc = acc
                                    + (&r[i][k] * &r[j][l]
                                        - Scalar::from_int(kron(i, k) * kron(j, l)))
                                        * &x[k][l];
                            }
                        }
                        Scalar::from_int(scale) * acc
                    })
                })
            };
            b.psi = dv(&p.alpha);
            b.phi = dv(&p.phi);
            b.gamma = dv(&p.gamma);
            b.lambda = dv(&p.lambda);
            b.xi = dv(&p.xi);
            b.pi = dv(&p.n);
            b.upsilon = dm(&p.chi, 1);
            b.sigma = dm(&p.sigma, 1);
            // the rank-2 rotation block acts on the transposed matrix
            let omt: Mat3<Scalar> =
                std::array::from_fn(|i| std::array::from_fn(|j| p.omega[j][i].clone()));
            b.omega = dm(&omt, 2);
        }
    }
    b
}

/// Pointwise Jacobi residual of the bracket defined by the field, evaluated at
/// `g`: the fully antisymmetrized combination of first derivatives of the
/// coefficient matrix with the structure-constant contraction. Zero at every
/// point exactly when the structure is Poisson.
pub fn check_eta_jacobi(p: &EtaParameters, g: &GroupElement<Scalar>) -> Vec<(usize, usize, usize, Scalar)> {
    let c = structure_constants();
    let m = eval_eta_matrix(p, g, Formula::Corrected);
    // derivative of the coefficient matrix along each left-translation flow
    let lifted = p.lift::<Dual<Scalar>>();
    let gl = g.lift();
    let dm: Vec<Mat10<Scalar>> = (0..DIM)
        .map(|l| {
            let seed: Dual<Scalar> = Dual::new(Scalar::zero(), Scalar::one());
            let moved = compose(&exp_generator(l, seed), &gl);
            let mat = eval_eta(&lifted, &moved, Formula::Corrected).to_matrix();
            (0..DIM)
                .map(|i| (0..DIM).map(|j| mat[i][j].du.clone()).collect())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for k in (j + 1)..DIM {
                let mut t = Scalar::zero();
                for l in 0..DIM {
                    t = t
                        + &m[i][l] * &dm[l][j][k]
                        + &m[k][l] * &dm[l][i][j]
                        + &m[j][l] * &dm[l][k][i];
                }
                for l in 0..DIM {
                    for q in 0..DIM {
                        let (c1, c2, c3) = (c[l][q][j], c[l][q][i], c[l][q][k]);
                        if c1 != 0 {
                            t = t - Scalar::from_int(c1) * &m[i][l] * &m[q][k];
                        }
                        if c2 != 0 {
                            t = t - Scalar::from_int(c2) * &m[k][l] * &m[q][j];
                        }
                        if c3 != 0 {
                            t = t - Scalar::from_int(c3) * &m[j][l] * &m[q][i];
                        }
                    }
                }
                if !t.is_zero() {
                    out.push((i, j, k, t));
                }
            }
        }
    }
    out
}

/// Draw a full random parameter set with entries of bounded height; the
/// trace gauge on `sigma` and `chi` is enforced.
pub fn sample_parameters(rng: &mut crate::rng::SampleRng, bound: i64) -> EtaParameters {
    let mut p = EtaParameters {
        alpha: rng.rational3(bound),
        beta: rng.rational(bound),
        gamma: rng.rational3(bound),
        phi: rng.rational3(bound),
        lambda: rng.rational3(bound),
        v_param: rng.rational(bound),
        xi: rng.rational3(bound),
        theta: rng.rational(bound),
        rho: rng.rational(bound),
        sigma: std::array::from_fn(|_| rng.rational3(bound)),
        chi: std::array::from_fn(|_| rng.rational3(bound)),
        omega: std::array::from_fn(|_| rng.rational3(bound)),
        n: rng.rational3(bound),
    };
    p.sigma[2][2] = -(&p.sigma[0][0] + &p.sigma[1][1]);
    p.chi[2][2] = -(&p.chi[0][0] + &p.chi[1][1]);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;
    use crate::group::sample_group_element;

    use super::sample_parameters as random_params;

    #[test]
    fn eta_vanishes_at_identity() {
        let mut rng = SampleRng::new(21);
        for _ in 0..5 {
            let p = random_params(&mut rng, 3);
            let b = eval_eta(&p.lift::<Scalar>(), &GroupElement::identity(), Formula::Corrected);
            assert!(b.is_zero());
        }
    }

    #[test]
    fn cocycle_holds_for_random_parameters() {
        let mut rng = SampleRng::new(22);
        for _ in 0..5 {
            let p = random_params(&mut rng, 2);
            let g1 = sample_group_element(&mut rng, 2);
            let g2 = sample_group_element(&mut rng, 2);
            assert!(check_cocycle(&p, &g1, &g2, Formula::Corrected).is_zero());
        }
    }

    #[test]
    fn printed_formula_fails_cocycle_when_n_nonzero() {
        let mut rng = SampleRng::new(23);
        let mut found_failure = false;
        for _ in 0..5 {
            let mut p = EtaParameters::default();
            p.n = rng.rational3_nonzero(2);
            let g1 = sample_group_element(&mut rng, 2);
            let g2 = sample_group_element(&mut rng, 2);
            if !check_cocycle(&p, &g1, &g2, Formula::Printed).is_zero() {
                found_failure = true;
            }
            assert!(check_cocycle(&p, &g1, &g2, Formula::Corrected).is_zero());
        }
        assert!(found_failure);
    }

    #[test]
    fn broken_psi_control_fails() {
        let mut rng = SampleRng::new(24);
        let mut p = EtaParameters::default();
        p.alpha = [Scalar::from_int(1), Scalar::zero(), Scalar::zero()];
        let mut bad = false;
        for _ in 0..5 {
            let g1 = sample_group_element(&mut rng, 2);
            let g2 = sample_group_element(&mut rng, 2);
            if !check_cocycle_broken_psi(&p, &g1, &g2).is_zero() {
                bad = true;
            }
        }
        assert!(bad);
    }

    #[test]
    fn subgroup_restrictions_match() {
        let mut rng = SampleRng::new(25);
        for _ in 0..4 {
            let p = random_params(&mut rng, 2);
            let mut gt = GroupElement::<Scalar>::identity();
            gt.t = rng.rational(3);
            assert!(check_subgroup_solution(&p, Subgroup::Time, &gt).unwrap());
            let mut ga = GroupElement::<Scalar>::identity();
            ga.a = rng.rational3(3);
            assert!(check_subgroup_solution(&p, Subgroup::Space, &ga).unwrap());
            let mut gv = GroupElement::<Scalar>::identity();
            gv.v = rng.rational3(3);
            assert!(check_subgroup_solution(&p, Subgroup::Boost, &gv).unwrap());
            let mut gr = GroupElement::<Scalar>::identity();
            gr.r = crate::linalg::cayley(&rng.rational3(2));
            assert!(check_subgroup_solution(&p, Subgroup::Rotation, &gr).unwrap());
            // wrong subgroup -> precondition error
            assert!(check_subgroup_solution(&p, Subgroup::Time, &ga).is_err());
        }
    }

    #[test]
    fn serde_rejects_unknown_fields() {
        let p = EtaParameters::default();
        let j = serde_json::to_string(&p).unwrap();
        let back: EtaParameters = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        let bad = j.replacen('{', "{\"bogus\":\"1\",", 1);
        assert!(serde_json::from_str::<EtaParameters>(&bad).is_err());
    }
}
