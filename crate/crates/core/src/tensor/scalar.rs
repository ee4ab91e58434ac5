use num_complex::Complex64;

use crate::jet::{Jet, Rational};

/// Component type of a tensor: exact jets on curved backgrounds, complex
/// amplitudes on the torus.
pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    /// `self += a * b`, or `self -= a * b` when `negate`.
    fn mul_acc(&mut self, a: &Self, b: &Self, negate: bool);

    /// `self += sign * other` for `sign` in {-1, 0, 1}.
    fn add_signed(&mut self, other: &Self, sign: i32) {
        match sign {
            1 => self.add_assign(other),
            -1 => self.sub_assign(other),
            _ => {}
        }
    }

    fn signed(&self, sign: i32) -> Self {
        match sign {
            1 => self.clone(),
            -1 => self.neg(),
            _ => self.zero_like(),
        }
    }
}

impl Scalar for Jet {
    fn zero_like(&self) -> Jet {
        Jet::zero(self.nvars())
    }

    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }

    fn add(&self, other: &Jet) -> Jet {
        self + other
    }

    fn sub(&self, other: &Jet) -> Jet {
        self - other
    }

    fn mul(&self, other: &Jet) -> Jet {
        self * other
    }

    fn neg(&self) -> Jet {
        -self
    }

    fn scale(&self, r: &Rational) -> Jet {
        Jet::scale(self, r)
    }

    fn add_assign(&mut self, other: &Jet) {
        *self = &*self + other;
    }

    fn sub_assign(&mut self, other: &Jet) {
        *self = &*self - other;
    }

    fn mul_acc(&mut self, a: &Jet, b: &Jet, negate: bool) {
        self.add_product(a, b, negate);
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add(&self, other: &Complex64) -> Complex64 {
        self + other
    }

    fn sub(&self, other: &Complex64) -> Complex64 {
        self - other
    }

    fn mul(&self, other: &Complex64) -> Complex64 {
        self * other
    }

    fn neg(&self) -> Complex64 {
        -self
    }

    fn scale(&self, r: &Rational) -> Complex64 {
        self * r.to_f64()
    }

    fn add_assign(&mut self, other: &Complex64) {
        *self += other;
    }

    fn sub_assign(&mut self, other: &Complex64) {
        *self -= other;
    }

    fn mul_acc(&mut self, a: &Complex64, b: &Complex64, negate: bool) {
        if negate {
            *self -= a * b;
        } else {
            *self += a * b;
        }
    }
}
