//! Small exact linear-algebra helpers over any coefficient ring: 3x3 blocks
//! for the rotation sector and 10x10 matrices over the full Lie-algebra basis.

use crate::scalar::{Ring, Scalar};

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];
pub type Mat10<T> = Vec<Vec<T>>;

/// Levi-Civita symbol.
pub fn eps(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Kronecker delta.
pub fn kron(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

pub fn zeros3<T: Ring>() -> Vec3<T> {
    std::array::from_fn(|_| T::zero())
}

pub fn zmat3<T: Ring>() -> Mat3<T> {
    std::array::from_fn(|_| zeros3())
}

pub fn id3<T: Ring>() -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| T::from_int(kron(i, j))))
}

pub fn matmul3<T: Ring>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

pub fn matvec3<T: Ring>(a: &Mat3<T>, x: &Vec3<T>) -> Vec3<T> {
    std::array::from_fn(|i| (0..3).fold(T::zero(), |acc, k| acc + a[i][k].clone() * x[k].clone()))
}

pub fn transpose3<T: Ring>(a: &Mat3<T>) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn dot3<T: Ring>(x: &Vec3<T>, y: &Vec3<T>) -> T {
    (0..3).fold(T::zero(), |acc, i| acc + x[i].clone() * y[i].clone())
}

pub fn cross3<T: Ring>(x: &Vec3<T>, y: &Vec3<T>) -> Vec3<T> {
    std::array::from_fn(|i| {
        let mut acc = T::zero();
        for j in 0..3 {
            for k in 0..3 {
                let e = eps(i, j, k);
                if e != 0 {
                    acc = acc + T::from_int(e) * x[j].clone() * y[k].clone();
                }
            }
        }
        acc
    })
}

pub fn zeros10<T: Ring>() -> Mat10<T> {
    (0..10).map(|_| (0..10).map(|_| T::zero()).collect()).collect()
}

pub fn matmul10<T: Ring>(a: &Mat10<T>, b: &Mat10<T>) -> Mat10<T> {
    (0..10)
        .map(|i| {
            (0..10)
                .map(|j| (0..10).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

pub fn transpose10<T: Ring>(a: &Mat10<T>) -> Mat10<T> {
    (0..10).map(|i| (0..10).map(|j| a[j][i].clone()).collect()).collect()
}

pub fn mat10_sub<T: Ring>(a: &Mat10<T>, b: &Mat10<T>) -> Mat10<T> {
    (0..10).map(|i| (0..10).map(|j| a[i][j].clone() - b[i][j].clone()).collect()).collect()
}

pub fn mat10_is_zero<T: Ring>(a: &Mat10<T>) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Conjugation `A M A^T` of an antisymmetric coefficient matrix by a 10x10
/// matrix: how the adjoint action extends to second exterior powers.
pub fn sandwich10<T: Ring>(a: &Mat10<T>, m: &Mat10<T>) -> Mat10<T> {
    matmul10(&matmul10(a, m), &transpose10(a))
}

/// Exact inverse of a 3x3 rational matrix via cofactors. Panics on a singular
/// matrix (never happens for the `I + S` used by the Cayley map).
pub fn inv3(m: &Mat3<Scalar>) -> Mat3<Scalar> {
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    assert!(!det.is_zero(), "singular 3x3 matrix");
    let cof = |i: usize, j: usize| {
        &m[(i + 1) % 3][(j + 1) % 3] * &m[(i + 2) % 3][(j + 2) % 3]
            - &m[(i + 1) % 3][(j + 2) % 3] * &m[(i + 2) % 3][(j + 1) % 3]
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det))
}

/// The Cayley transform `(I - S)(I + S)^{-1}` of the skew matrix of `s`:
/// a rational orthogonal matrix with determinant one for every rational `s`.
pub fn cayley(s: &Vec3<Scalar>) -> Mat3<Scalar> {
    let skew: Mat3<Scalar> = [
        [Scalar::zero(), -&s[2], s[1].clone()],
        [s[2].clone(), Scalar::zero(), -&s[0]],
        [-&s[1], s[0].clone(), Scalar::zero()],
    ];
    let plus: Mat3<Scalar> =
        std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int(kron(i, j)) + &skew[i][j]));
    let minus: Mat3<Scalar> =
        std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int(kron(i, j)) - &skew[i][j]));
    matmul3(&minus, &inv3(&plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_is_orthogonal() {
        let r = cayley(&[Scalar::ratio(1, 2), Scalar::ratio(-2, 3), Scalar::from_int(3)]);
        assert_eq!(matmul3(&r, &transpose3(&r)), id3());
    }

    #[test]
    fn cayley_axis_example() {
        // s = (1,0,0) rotates by 90 degrees about the x axis
        let r = cayley(&[Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let expect: Mat3<Scalar> = [
            [Scalar::from_int(1), Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero(), Scalar::from_int(1)],
            [Scalar::zero(), Scalar::from_int(-1), Scalar::zero()],
        ];
        assert_eq!(r, expect);
    }

    #[test]
    fn cayley_zero_is_identity() {
        assert_eq!(cayley(&zeros3()), id3::<Scalar>());
    }
}
