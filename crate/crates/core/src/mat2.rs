//! 2×2 matrices over Q(ζ₈), the per-variable holographic transformations.

use std::ops::Mul;

use num_traits::{One, Zero};

use crate::{Cyc8, Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub m: [[Cyc8; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Cyc8, b: Cyc8, c: Cyc8, d: Cyc8) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::diag(Cyc8::one(), Cyc8::one())
    }

    pub fn diag(a: Cyc8, d: Cyc8) -> Self {
        Mat2::new(a, Cyc8::zero(), Cyc8::zero(), d)
    }

    /// `M_{α^k} = diag(1, α^k)`.
    pub fn alpha_diag(k: i64) -> Self {
        Self::diag(Cyc8::one(), Cyc8::alpha_pow(k))
    }

    /// `Z = [[1, 1], [i, −i]]`.
    pub fn z() -> Self {
        Mat2::new(Cyc8::one(), Cyc8::one(), Cyc8::i(), -Cyc8::i())
    }

    /// `Z' = [[1, 1], [−i, i]]`.
    pub fn z_conj() -> Self {
        Mat2::new(Cyc8::one(), Cyc8::one(), -Cyc8::i(), Cyc8::i())
    }

    pub fn from_columns(c0: [Cyc8; 2], c1: [Cyc8; 2]) -> Self {
        let [a, c] = c0;
        let [b, d] = c1;
        Mat2::new(a, b, c, d)
    }

    pub fn column(&self, j: usize) -> [Cyc8; 2] {
        [self.m[0][j].clone(), self.m[1][j].clone()]
    }

    pub fn det(&self) -> Cyc8 {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = d.inv()?;
        let [[a, b], [c, dd]] = &self.m;
        Ok(Mat2::new(
            dd * &inv,
            -(b * &inv),
            -(c * &inv),
            a * &inv,
        ))
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.m.clone();
        Mat2::new(a, c, b, d)
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[0][1].is_zero() && self.m[1][0].is_zero()
    }

    /// `Mᵀ M` is the identity.
    pub fn is_orthogonal(&self) -> bool {
        &self.transpose() * self == Mat2::identity()
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &self.m[i][0] * &rhs.m[0][j] + &self.m[i][1] * &rhs.m[1][j];
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_orthogonality() {
        let z = Mat2::z();
        let zi = z.inverse().unwrap();
        assert_eq!(&z * &zi, Mat2::identity());
        assert!(!z.is_orthogonal());
        let s = Cyc8::sqrt2().inv().unwrap();
        let h = Mat2::new(s.clone(), s.clone(), s.clone(), -s);
        assert!(h.is_orthogonal());
        let singular = Mat2::new(Cyc8::one(), Cyc8::one(), Cyc8::one(), Cyc8::one());
        assert!(singular.inverse().is_err());
    }
}
