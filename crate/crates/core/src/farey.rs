//! Automorphisms of the Farey tessellation as integer matrices of
//! determinant ±1, acting on slopes by (anti-)Möbius maps.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::mat2::Mat2;
use crate::scalar::IntScalar;
use crate::slope::Slope;

/// An element of `PGL(2, Z)`, stored with its first nonzero entry (row-major)
/// positive. Determinant `-1` marks orientation-reversing maps, which act by
/// `x ↦ (a·x̄ + b)/(c·x̄ + d)`; on the real boundary that is the same formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FareyMatrix<I = i64> {
    m: Mat2<I>,
}

impl<I: IntScalar> FareyMatrix<I> {
    pub fn new(m: Mat2<I>) -> Result<Self> {
        let det = m.det();
        if !det.abs().is_one() {
            return domain(format!("Farey matrix needs determinant ±1, got {det}"));
        }
        Ok(Self::canonical(m))
    }

    fn canonical(m: Mat2<I>) -> Self {
        let first = m.entries().into_iter().find(|x| !x.is_zero()).cloned();
        match first {
            Some(x) if x.is_negative() => FareyMatrix { m: m.neg() },
            _ => FareyMatrix { m },
        }
    }

    pub fn identity() -> Self {
        FareyMatrix { m: Mat2::identity() }
    }

    pub fn matrix(&self) -> &Mat2<I> {
        &self.m
    }

    pub fn det(&self) -> I {
        self.m.det()
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.det().is_negative()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::canonical(&self.m * &other.m)
    }

    pub fn inverse(&self) -> Self {
        // adj(M) = det(M)·M⁻¹, and the global sign is irrelevant.
        Self::canonical(self.m.adjugate())
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        Self::canonical(base.m.pow(e.unsigned_abs()))
    }

    pub fn apply(&self, s: &Slope<I>) -> Slope<I> {
        let (x, y) = (s.numer().clone(), s.denom().clone());
        let m = &self.m;
        Slope::from_pair(m.a.clone() * x.clone() + m.b.clone() * y.clone(), m.c.clone() * x + m.d.clone() * y)
    }
}

impl<I: IntScalar> fmt::Display for FareyMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d)
    }
}

/// Reflection in the Farey edge `{k, ∞}`: `x ↦ 2k - x`.
pub fn reflection_at_infinity<I: IntScalar>(k: &I) -> FareyMatrix<I> {
    let two = I::from_i64_exact(2);
    FareyMatrix::canonical(Mat2::new(-I::one(), two * k.clone(), I::zero(), I::one()))
}

/// Translation `x ↦ x + k`.
pub fn translation<I: IntScalar>(k: &I) -> FareyMatrix<I> {
    FareyMatrix::canonical(Mat2::new(I::one(), k.clone(), I::zero(), I::one()))
}

/// Turning sense of a parabolic about its fixed vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rotation {
    /// `I + N` with `N = [[qp, -q²], [p², -qp]]`; at `0` this is
    /// `x ↦ x/(x+1)`, carrying `∞ → 1 → 1/2 → …`.
    #[default]
    Clockwise,
    /// The inverse direction, `I - N`.
    Counterclockwise,
}

impl Rotation {
    pub fn sign(self) -> i64 {
        match self {
            Rotation::Clockwise => 1,
            Rotation::Counterclockwise => -1,
        }
    }
}

/// The primitive parabolic about `r = q/p`, one Farey unit clockwise:
/// `I + [[qp, -q²], [p², -qp]]`. For `r = ∞` this is the translation
/// `x ↦ x + 1`.
pub fn parabolic_unit<I: IntScalar>(r: &Slope<I>) -> FareyMatrix<I> {
    parabolic_unit_turning(r, Rotation::Clockwise)
}

pub fn parabolic_unit_turning<I: IntScalar>(r: &Slope<I>, rotation: Rotation) -> FareyMatrix<I> {
    if r.is_infinite() {
        return translation(&I::from_i64_exact(rotation.sign()));
    }
    let (q, p) = (r.numer().clone(), r.denom().clone());
    let mut n = Mat2::new(q.clone() * p.clone(), -(q.clone() * q.clone()), p.clone() * p.clone(), -(q * p));
    if rotation == Rotation::Counterclockwise {
        n = n.neg();
    }
    FareyMatrix::canonical(Mat2::new(I::one() + n.a, n.b, n.c, I::one() + n.d))
}

/// The slope `β*/α*` with `(α*, β*) = (α^d m, α^(d-1) m (α - β) + e)`.
pub fn riley_family<I: IntScalar>(alpha: &I, beta: &I, d: u32, m: &I, e: &I) -> Result<Slope<I>> {
    let one = I::one();
    if !alpha.gcd(beta).is_one() {
        return domain(format!("gcd({alpha}, {beta}) != 1"));
    }
    if !(*beta >= one && beta < alpha) {
        return domain(format!("need 1 <= beta < alpha, got alpha = {alpha}, beta = {beta}"));
    }
    if d < 2 {
        return domain(format!("need d >= 2, got {d}"));
    }
    if *m < I::from_i64_exact(3) {
        return domain(format!("need m >= 3, got {m}"));
    }
    if *e < one {
        return domain(format!("need e >= 1, got {e}"));
    }
    let alpha_pow = |k: u32| (0..k).fold(I::one(), |acc, _| acc * alpha.clone());
    let den = alpha_pow(d) * m.clone();
    let num = alpha_pow(d - 1) * m.clone() * (alpha.clone() - beta.clone()) + e.clone();
    if !num.gcd(&den).is_one() {
        return Err(Error::Domain(format!("beta*/alpha* = {num}/{den} is not reduced")));
    }
    Slope::new(num, den)
}
