//! Bivectors over the Galilei algebra in the structured component basis.
//!
//! A bivector is stored through nine named blocks
//! `(Psi, Phi, Gamma, Lambda, Upsilon, Sigma, Xi, Omega, Pi)` and converts
//! losslessly to an antisymmetric 10x10 coefficient matrix over the ordered
//! basis `H, P, K, J`. Each block enters the matrix with a fixed sign weight;
//! the weights are pinned once and for all by requiring that the evaluated
//! field satisfies the multiplicative cocycle identity exactly (see
//! `docs/CORRECTIONS.md` for the full convention audit).

use crate::linalg::{eps, zeros3, zmat3, Mat10, Mat3, Vec3};
use crate::scalar::{Ring, Scalar};
use serde::{Deserialize, Serialize};

/// Sign weights of the blocks in the matrix embedding, in the order
/// `Psi, Phi, Gamma, Lambda, Upsilon, Sigma, Xi, Omega, Pi`.
pub const WEIGHTS: [i64; 9] = [-1, 1, 1, -1, -1, 1, -1, 1, -1];

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Bivector<T> {
    pub psi: Vec3<T>,
    pub phi: Vec3<T>,
    pub gamma: Vec3<T>,
    pub lambda: Vec3<T>,
    pub upsilon: Mat3<T>,
    pub sigma: Mat3<T>,
    pub xi: Vec3<T>,
    pub omega: Mat3<T>,
    pub pi: Vec3<T>,
}

impl<T: Ring> Bivector<T> {
    pub fn zero() -> Self {
        Bivector {
            psi: zeros3(),
            phi: zeros3(),
            gamma: zeros3(),
            lambda: zeros3(),
            upsilon: zmat3(),
            sigma: zmat3(),
            xi: zeros3(),
            omega: zmat3(),
            pi: zeros3(),
        }
    }

    pub fn is_zero(&self) -> bool {
        let v3 = |x: &Vec3<T>| x.iter().all(|e| e.is_zero());
        let m3 = |x: &Mat3<T>| x.iter().all(|r| r.iter().all(|e| e.is_zero()));
        v3(&self.psi)
            && v3(&self.phi)
            && v3(&self.gamma)
            && v3(&self.lambda)
            && m3(&self.upsilon)
            && m3(&self.sigma)
            && v3(&self.xi)
            && m3(&self.omega)
            && v3(&self.pi)
    }

    /// Antisymmetric 10x10 coefficient matrix `M[i][j]` over the algebra
    /// basis, with each block weighted by its fixed sign.
    pub fn to_matrix(&self) -> Mat10<T> {
        let mut m = crate::linalg::zeros10::<T>();
        let [w_psi, w_phi, w_gam, w_lam, w_ups, w_sig, w_xi, w_om, w_pi] = WEIGHTS;
        let add = |m: &mut Mat10<T>, i: usize, j: usize, val: T| {
            m[i][j] = m[i][j].clone() + val.clone();
            m[j][i] = m[j][i].clone() - val;
        };
        for i in 0..3 {
            add(&mut m, 0, 7 + i, T::from_int(w_psi) * self.psi[i].clone());
            add(&mut m, 0, 1 + i, T::from_int(w_phi) * self.phi[i].clone());
            add(&mut m, 0, 4 + i, T::from_int(w_gam) * self.gamma[i].clone());
        }
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        add(&mut m, 1 + j, 1 + k, T::from_int(w_lam * e) * self.lambda[i].clone());
                        add(&mut m, 4 + j, 4 + k, T::from_int(w_xi * e) * self.xi[i].clone());
                        add(&mut m, 7 + j, 7 + k, T::from_int(w_pi * e) * self.pi[i].clone());
                    }
                }
                add(&mut m, 1 + i, 4 + j, T::from_int(w_ups) * self.upsilon[i][j].clone());
                add(&mut m, 1 + i, 7 + j, T::from_int(w_sig) * self.sigma[i][j].clone());
                add(&mut m, 4 + i, 7 + j, T::from_int(w_om) * self.omega[i][j].clone());
            }
        }
        m
    }

    /// Inverse of [`Bivector::to_matrix`]; assumes `m` is antisymmetric.
    pub fn from_matrix(m: &Mat10<T>) -> Self {
        let [w_psi, w_phi, w_gam, w_lam, w_ups, w_sig, w_xi, w_om, w_pi] = WEIGHTS;
        let inv = |w: i64| T::frac(1, w);
        let axial = |base: usize, w: i64| -> Vec3<T> {
            std::array::from_fn(|i| {
                let mut acc = T::zero();
                for j in 0..3 {
                    for k in 0..3 {
                        let e = eps(i, j, k);
                        if e != 0 {
                            acc = acc + T::frac(e, 4 * w) * m[base + j][base + k].clone();
                        }
                    }
                }
                acc
            })
        };
        Bivector {
            psi: std::array::from_fn(|i| inv(w_psi) * m[0][7 + i].clone()),
            phi: std::array::from_fn(|i| inv(w_phi) * m[0][1 + i].clone()),
            gamma: std::array::from_fn(|i| inv(w_gam) * m[0][4 + i].clone()),
            lambda: axial(1, w_lam),
            xi: axial(4, w_xi),
            pi: axial(7, w_pi),
            upsilon: std::array::from_fn(|i| {
                std::array::from_fn(|j| inv(w_ups) * m[1 + i][4 + j].clone())
            }),
            sigma: std::array::from_fn(|i| {
                std::array::from_fn(|j| inv(w_sig) * m[1 + i][7 + j].clone())
            }),
            omega: std::array::from_fn(|i| {
                std::array::from_fn(|j| inv(w_om) * m[4 + i][7 + j].clone())
            }),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let v3 = |x: &Vec3<T>, y: &Vec3<T>| -> Vec3<T> {
            std::array::from_fn(|i| x[i].clone() - y[i].clone())
        };
        let m3 = |x: &Mat3<T>, y: &Mat3<T>| -> Mat3<T> {
            std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].clone() - y[i][j].clone()))
        };
        Bivector {
            psi: v3(&self.psi, &other.psi),
            phi: v3(&self.phi, &other.phi),
            gamma: v3(&self.gamma, &other.gamma),
            lambda: v3(&self.lambda, &other.lambda),
            upsilon: m3(&self.upsilon, &other.upsilon),
            sigma: m3(&self.sigma, &other.sigma),
            xi: v3(&self.xi, &other.xi),
            omega: m3(&self.omega, &other.omega),
            pi: v3(&self.pi, &other.pi),
        }
    }
}

pub type ScalarBivector = Bivector<Scalar>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleRng;

    fn random_bivector(rng: &mut SampleRng) -> ScalarBivector {
        ScalarBivector {
            psi: rng.rational3(3),
            phi: rng.rational3(3),
            gamma: rng.rational3(3),
            lambda: rng.rational3(3),
            upsilon: std::array::from_fn(|_| rng.rational3(3)),
            sigma: std::array::from_fn(|_| rng.rational3(3)),
            xi: rng.rational3(3),
            omega: std::array::from_fn(|_| rng.rational3(3)),
            pi: rng.rational3(3),
        }
    }

    #[test]
    fn matrix_roundtrip_and_antisymmetry() {
        let mut rng = SampleRng::new(11);
        for _ in 0..10 {
            let b = random_bivector(&mut rng);
            let m = b.to_matrix();
            for i in 0..10 {
                for j in 0..10 {
                    assert_eq!(m[i][j], -&m[j][i]);
                }
            }
            assert_eq!(Bivector::from_matrix(&m), b);
        }
    }
}
