//! First-order dual numbers over an arbitrary coefficient ring.
//!
//! `Dual<Scalar>` computes exact first derivatives of polynomial maps;
//! `Dual<Dual<Scalar>>` nests to exact mixed second derivatives. Because the
//! coefficient type is any [`Ring`], every formula in the crate (group law,
//! bivector evaluation, closed-form brackets) can be differentiated simply by
//! evaluating it on lifted inputs.

use crate::scalar::{Ring, Scalar};
use std::ops::{Add, Mul, Neg, Sub};

/// `re + du * eps` with `eps^2 = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<T: Ring> {
    pub re: T,
    pub du: T,
}

impl<T: Ring> Dual<T> {
    /// A constant (zero derivative part).
    pub fn constant(re: T) -> Self {
        Dual { re, du: T::zero() }
    }
    /// The seed `re + eps`: derivative one.
    pub fn seed(re: T) -> Self {
        Dual { re, du: T::one() }
    }
    pub fn new(re: T, du: T) -> Self {
        Dual { re, du }
    }
}

impl<T: Ring> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, du: self.du + o.du }
    }
}

impl<T: Ring> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, du: self.du - o.du }
    }
}

impl<T: Ring> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re.clone() * o.re.clone(),
            du: self.re * o.du + self.du * o.re,
        }
    }
}

impl<T: Ring> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, du: -self.du }
    }
}

impl<T: Ring> Ring for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_scalar(s: &Scalar) -> Self {
        Dual::constant(T::from_scalar(s))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn derivative_of_product() {
        // d/dx (x^2 * (x+1)) at x=3 is 2*3*4 + 9 = 33
        let x = Dual::seed(s(3));
        let y = x.clone() * x.clone() * (x.clone() + Dual::constant(s(1)));
        assert_eq!(y.re, s(36));
        assert_eq!(y.du, s(33));
    }

    #[test]
    fn nested_mixed_second_derivative() {
        // f(x,y) = x^2 y; d2f/dxdy at (2,5) = 2x = 4
        let x: Dual<Dual<Scalar>> = Dual::seed(Dual::constant(s(2)));
        let y: Dual<Dual<Scalar>> = Dual::constant(Dual::seed(s(5)));
        let f = x.clone() * x * y;
        assert_eq!(f.du.du, s(4));
    }
}
