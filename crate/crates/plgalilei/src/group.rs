//! The ten-parameter Galilei group and its Lie algebra.
//!
//! A group element is `(t, a, v, R)`: time translation, space translation,
//! boost velocity and rotation. The Lie-algebra basis is ordered
//! `H, P1..P3, K1..K3, J1..J3` (indices `0, 1..3, 4..6, 7..9`) and every
//! module in the crate uses exactly this ordering.

use crate::dual::Dual;
use crate::linalg::*;
use crate::rng::SampleRng;
use crate::scalar::{Ring, Scalar};
use serde::{Deserialize, Serialize};

pub const DIM: usize = 10;

/// Basis slot of the time generator `H`.
pub const H: usize = 0;
/// First basis slot of the momenta `P_i`.
pub const P: usize = 1;
/// First basis slot of the boosts `K_i`.
pub const K: usize = 4;
/// First basis slot of the rotations `J_i`.
pub const J: usize = 7;

pub const BASIS_NAMES: [&str; DIM] =
    ["H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"];

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GroupElement<T> {
    pub t: T,
    pub a: [T; 3],
    pub v: [T; 3],
    #[serde(rename = "R")]
    pub r: [[T; 3]; 3],
}

impl<T: Ring> GroupElement<T> {
    pub fn identity() -> Self {
        GroupElement { t: T::zero(), a: zeros3(), v: zeros3(), r: id3() }
    }

    /// Lift into dual numbers with zero derivative part (a constant curve).
    pub fn lift(&self) -> GroupElement<Dual<T>> {
        GroupElement {
            t: Dual::constant(self.t.clone()),
            a: std::array::from_fn(|i| Dual::constant(self.a[i].clone())),
            v: std::array::from_fn(|i| Dual::constant(self.v[i].clone())),
            r: std::array::from_fn(|i| {
                std::array::from_fn(|j| Dual::constant(self.r[i][j].clone()))
            }),
        }
    }
}

/// Group law: `g1` plays the primed (left) role:
/// `(t + t', a' + R'a + v't, v' + R'v, R'R)`.
pub fn compose<T: Ring>(g1: &GroupElement<T>, g2: &GroupElement<T>) -> GroupElement<T> {
    GroupElement {
        t: g1.t.clone() + g2.t.clone(),
        a: std::array::from_fn(|i| {
            let mut x = g1.a[i].clone() + g1.v[i].clone() * g2.t.clone();
            for j in 0..3 {
                x = x + g1.r[i][j].clone() * g2.a[j].clone();
            }
            x
        }),
        v: std::array::from_fn(|i| {
            let mut x = g1.v[i].clone();
            for j in 0..3 {
                x = x + g1.r[i][j].clone() * g2.v[j].clone();
            }
            x
        }),
        r: matmul3(&g1.r, &g2.r),
    }
}

/// Inverse: `(-t, -R^T(a - t v), -R^T v, R^T)`.
pub fn inverse<T: Ring>(g: &GroupElement<T>) -> GroupElement<T> {
    let rt = transpose3(&g.r);
    GroupElement {
        t: -g.t.clone(),
        a: std::array::from_fn(|i| {
            -(0..3).fold(T::zero(), |acc, j| {
                acc + rt[i][j].clone() * (g.a[j].clone() - g.t.clone() * g.v[j].clone())
            })
        }),
        v: std::array::from_fn(|i| {
            -(0..3).fold(T::zero(), |acc, j| acc + rt[i][j].clone() * g.v[j].clone())
        }),
        r: rt,
    }
}

/// Rotation generator `W_i` with `(W_i)[k][j] = eps_{ijk}`, chosen so that
/// conjugation gives `[J_i, P_j] = eps_{ijk} P_k`.
fn w_gen<T: Ring>(i: usize) -> Mat3<T> {
    std::array::from_fn(|k| std::array::from_fn(|j| T::from_int(eps(i, j, k))))
}

/// The one-parameter subgroup `exp(s X_k)` through basis direction `k`.
///
/// The rotation block is expanded only to first order in `s`, so `s` must be
/// nilpotent of order two (a dual seed with zero value part); every caller
/// differentiates at the identity of the curve parameter.
pub fn exp_generator<T: Ring>(k: usize, s: T) -> GroupElement<T> {
    let mut g = GroupElement::<T>::identity();
    match k {
        0 => g.t = s,
        1..=3 => g.a[k - 1] = s,
        4..=6 => g.v[k - 4] = s,
        _ => {
            let w = w_gen::<T>(k - 7);
            g.r = std::array::from_fn(|p| {
                std::array::from_fn(|q| T::from_int(kron(p, q)) + s.clone() * w[p][q].clone())
            });
        }
    }
    g
}

/// Coordinates of a first-order curve through the identity: the derivative
/// part of each coordinate, with the antisymmetric rotation part converted to
/// the `J` components via `theta_i = (1/2) eps_{imn} W[n][m]`.
pub fn algebra_coords<T: Ring>(curve: &GroupElement<Dual<T>>) -> [T; DIM] {
    std::array::from_fn(|idx| match idx {
        0 => curve.t.du.clone(),
        1..=3 => curve.a[idx - 1].du.clone(),
        4..=6 => curve.v[idx - 4].du.clone(),
        _ => {
            let i = idx - 7;
            let mut th = T::zero();
            for m in 0..3 {
                for n in 0..3 {
                    let e = eps(i, m, n);
                    if e != 0 {
                        th = th + T::frac(e, 2) * curve.r[n][m].du.clone();
                    }
                }
            }
            th
        }
    })
}

/// Adjoint action on the algebra: column `k` holds the coordinates of
/// `d/ds (g exp(s X_k) g^{-1})` at `s = 0`, computed exactly through the group
/// law with dual numbers.
pub fn adjoint<T: Ring>(g: &GroupElement<T>) -> Mat10<T> {
    let gl = g.lift();
    let gli = inverse(&gl);
    let mut cols: Vec<[T; DIM]> = Vec::with_capacity(DIM);
    for k in 0..DIM {
        let seed: Dual<T> = Dual::new(T::zero(), T::one());
        let curve = compose(&compose(&gl, &exp_generator(k, seed)), &gli);
        cols.push(algebra_coords(&curve));
    }
    (0..DIM).map(|i| (0..DIM).map(|k| cols[k][i].clone()).collect()).collect()
}

/// Derivative of a polynomial observable along the left-translation flow of
/// basis direction `k` at `g`: the right-invariant vector field applied to `f`.
pub fn right_invariant_derivative<T: Ring>(
    k: usize,
    f: impl Fn(&GroupElement<Dual<T>>) -> Dual<T>,
    g: &GroupElement<T>,
) -> T {
    let seed: Dual<T> = Dual::new(T::zero(), T::one());
    let moved = compose(&exp_generator(k, seed), &g.lift());
    f(&moved).du
}

/// Random group element with coordinates bounded by `bound` and a Cayley
/// rotation from a similarly bounded parameter.
pub fn sample_group_element(rng: &mut SampleRng, bound: i64) -> GroupElement<Scalar> {
    GroupElement {
        t: rng.rational(bound),
        a: rng.rational3(bound),
        v: rng.rational3(bound),
        r: cayley(&rng.rational3(bound)),
    }
}

/// Structure constants `c[i][j][k]` of `[X_i, X_j] = c[i][j][k] X_k` in the
/// real convention: `[J,J] = eps J`, `[J,K] = eps K`, `[J,P] = eps P`,
/// `[K_i, H] = P_i`, all other brackets zero.
pub fn structure_constants() -> Vec<Vec<[i64; DIM]>> {
    let mut c = vec![vec![[0i64; DIM]; DIM]; DIM];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    c[J + i][J + j][J + k] = e;
                    c[J + i][K + j][K + k] = e;
                    c[K + j][J + i][K + k] = -e;
                    c[J + i][P + j][P + k] = e;
                    c[P + j][J + i][P + k] = -e;
                }
            }
        }
    }
    for i in 0..3 {
        c[K + i][H][P + i] = 1;
        c[H][K + i][P + i] = -1;
    }
    c
}

/// Bilinear extension of the structure constants to coefficient vectors.
pub fn algebra_bracket(x: &[Scalar; DIM], y: &[Scalar; DIM]) -> [Scalar; DIM] {
    let c = structure_constants();
    let mut out: [Scalar; DIM] = std::array::from_fn(|_| Scalar::zero());
    for i in 0..DIM {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..DIM {
            if y[j].is_zero() {
                continue;
            }
            for (k, out_k) in out.iter_mut().enumerate() {
                if c[i][j][k] != 0 {
                    *out_k = &*out_k + &(Scalar::from_int(c[i][j][k]) * &x[i] * &y[j]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rg(rng: &mut SampleRng) -> GroupElement<Scalar> {
        sample_group_element(rng, 3)
    }

    #[test]
    fn group_axioms() {
        let mut rng = SampleRng::new(1);
        for _ in 0..20 {
            let (g1, g2, g3) = (rg(&mut rng), rg(&mut rng), rg(&mut rng));
            assert_eq!(compose(&compose(&g1, &g2), &g3), compose(&g1, &compose(&g2, &g3)));
            assert_eq!(compose(&g1, &inverse(&g1)), GroupElement::identity());
            assert_eq!(compose(&inverse(&g1), &g1), GroupElement::identity());
            assert_eq!(inverse(&inverse(&g1)), g1);
        }
    }

    #[test]
    fn compose_example() {
        // (1,(1,0,0),(0,1,0),I) * (2,(0,0,1),0,I) = (3,(1,2,1),(0,1,0),I)
        let s = Scalar::from_int;
        let g1 = GroupElement {
            t: s(1),
            a: [s(1), s(0), s(0)],
            v: [s(0), s(1), s(0)],
            r: id3(),
        };
        let g2 = GroupElement {
            t: s(2),
            a: [s(0), s(0), s(1)],
            v: zeros3(),
            r: id3(),
        };
        let g = compose(&g1, &g2);
        assert_eq!(g.t, s(3));
        assert_eq!(g.a, [s(1), s(2), s(1)]);
        assert_eq!(g.v, [s(0), s(1), s(0)]);
    }

    #[test]
    fn inverse_example() {
        let s = Scalar::from_int;
        let g = GroupElement {
            t: s(1),
            a: [s(1), s(0), s(0)],
            v: [s(0), s(0), s(1)],
            r: id3(),
        };
        let gi = inverse(&g);
        assert_eq!(gi.t, s(-1));
        assert_eq!(gi.a, [s(-1), s(0), s(1)]);
        assert_eq!(gi.v, [s(0), s(0), s(-1)]);
    }

    #[test]
    fn adjoint_is_homomorphism_and_identity() {
        let mut rng = SampleRng::new(2);
        let (g1, g2) = (rg(&mut rng), rg(&mut rng));
        let a12 = adjoint(&compose(&g1, &g2));
        assert_eq!(a12, matmul10(&adjoint(&g1), &adjoint(&g2)));
        let ae = adjoint(&GroupElement::<Scalar>::identity());
        for i in 0..DIM {
            for j in 0..DIM {
                assert_eq!(ae[i][j], Scalar::from_int(kron(i, j)));
            }
        }
    }

    #[test]
    fn adjoint_preserves_bracket() {
        let mut rng = SampleRng::new(3);
        let g = rg(&mut rng);
        let ad = adjoint(&g);
        let x: [Scalar; DIM] = std::array::from_fn(|_| rng.rational(3));
        let y: [Scalar; DIM] = std::array::from_fn(|_| rng.rational(3));
        let apply = |m: &Mat10<Scalar>, z: &[Scalar; DIM]| -> [Scalar; DIM] {
            std::array::from_fn(|i| {
                (0..DIM).fold(Scalar::zero(), |acc, k| acc + &m[i][k] * &z[k])
            })
        };
        let lhs = apply(&ad, &algebra_bracket(&x, &y));
        let rhs = algebra_bracket(&apply(&ad, &x), &apply(&ad, &y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn structure_constants_jacobi_and_examples() {
        let c = structure_constants();
        // antisymmetry
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    assert_eq!(c[i][j][k], -c[j][i][k]);
                }
            }
        }
        // Jacobi over all triples
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for m in 0..DIM {
                        let mut s = 0i64;
                        for l in 0..DIM {
                            s += c[i][j][l] * c[l][k][m]
                                + c[j][k][l] * c[l][i][m]
                                + c[k][i][l] * c[l][j][m];
                        }
                        assert_eq!(s, 0, "jacobi failed at {i},{j},{k},{m}");
                    }
                }
            }
        }
        // [J1,J2]=J3, [K2,H]=P2, [H,P1]=0
        assert_eq!(c[J][J + 1][J + 2], 1);
        assert_eq!(c[K + 1][H][P + 1], 1);
        assert!(c[H][P].iter().all(|&x| x == 0));
    }

    #[test]
    fn right_invariant_derivative_examples() {
        let mut rng = SampleRng::new(4);
        let g = rg(&mut rng);
        // H direction on t is 1 anywhere
        assert_eq!(
            right_invariant_derivative(H, |h| h.t.clone(), &g),
            Scalar::one()
        );
        // K1 direction on a1 equals t
        assert_eq!(
            right_invariant_derivative(K, |h| h.a[0].clone(), &g),
            g.t
        );
    }

    #[test]
    fn serde_roundtrip() {
        let mut rng = SampleRng::new(5);
        let g = rg(&mut rng);
        let j = serde_json::to_string(&g).unwrap();
        let back: GroupElement<Scalar> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, g);
    }
}
