//! Dense univariate polynomials over a ring, in the variable `y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Ring;

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The variable `y`.
    pub fn var() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluates after mapping coefficients into another ring.
    pub fn eval_with<U: Ring>(&self, x: &U, f: impl Fn(&T) -> U) -> U {
        self.coeffs.iter().rev().fold(U::zero(), |acc, c| acc * x.clone() + f(c))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut n = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().skip(1) {
            n = n + T::one();
            out.push(n.clone() * c.clone());
        }
        Self::new(out)
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self.coeffs, rhs.coeffs) } else { (rhs.coeffs, self.coeffs) };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: Ring + fmt::Display + PartialOrd> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "y")?,
                1 => write!(f, "{abs}y")?,
                _ if unit => write!(f, "y^{k}")?,
                _ => write!(f, "{abs}y^{k}")?,
            }
        }
        Ok(())
    }
}
