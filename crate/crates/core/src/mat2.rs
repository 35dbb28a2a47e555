use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::scalar::Ring;

/// A 2x2 matrix `[[a, b], [c, d]]` over any commutative ring.
///
/// The same type carries integer Farey matrices, matrices of trace
/// polynomials and complex representation matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Mat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl<T: Ring> Mat2<T> {
    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    /// The adjugate; equals the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<T: Ring> Mul for &Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        )
    }
}

impl<T: Ring> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_repeated_product() {
        let m = Mat2::new(7i64, -4, 9, -5);
        let mut acc = Mat2::identity();
        for e in 0..6u64 {
            assert_eq!(m.pow(e), acc);
            acc = &acc * &m;
        }
    }

    #[test]
    fn adjugate_inverts_unimodular() {
        let m = Mat2::new(2i64, 3, 1, 2);
        assert_eq!(m.det(), 1);
        assert_eq!(&m * &m.adjugate(), Mat2::identity());
    }
}
