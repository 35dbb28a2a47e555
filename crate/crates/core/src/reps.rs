//! Parabolic representations `ρ(a) = [[1,1],[0,1]]`, `ρ(b) = [[1,0],[y,1]]`.
//!
//! Exact word matrices live in `Mat2<Poly<T>>`; numerical ones in
//! `Mat2<Complex<F>>`. Certification evaluates slope words at the roots of
//! the Heckoid trace condition and reports every residual against its
//! tolerance. Matrix distances use the maximum entry modulus.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::mat2::Mat2;
use crate::orbit::{admits_epimorphism, is_in_orbit, EpiRoute, Epimorphism, Lambda, OrbitWitness, SearchBudget};
use crate::poly::Poly;
use crate::roots::{poly_roots, residual, AberthConfig};
use crate::scalar::{IntScalar, RealScalar, Ring};
use crate::slope::{HeckoidIndex, Slope};
use crate::words::{slope_word, GroupWord, Letter};

/// Trace polynomials have integer coefficients.
pub type TracePoly = Poly<BigInt>;

pub const DEFAULT_TOL: f64 = 1e-9;

fn letter_matrix<T: Ring>(l: Letter, y: &T) -> Mat2<T> {
    let (o, z) = (T::one(), T::zero());
    match l {
        Letter::A => Mat2::new(o.clone(), o.clone(), z, o),
        Letter::AInv => Mat2::new(o.clone(), -o.clone(), z, o),
        Letter::B => Mat2::new(o.clone(), z, y.clone(), o),
        Letter::BInv => Mat2::new(o.clone(), z, -y.clone(), o),
    }
}

/// `ρ(w)` with entries in any ring, at the point `y`.
pub fn word_matrix_at<T: Ring>(w: &GroupWord, y: &T) -> Mat2<T> {
    w.letters().iter().fold(Mat2::identity(), |acc, &l| &acc * &letter_matrix(l, y))
}

/// `ρ(w)` with polynomial entries in the Riley variable.
pub fn word_matrix_symbolic<T: Ring>(w: &GroupWord) -> Mat2<Poly<T>> {
    word_matrix_at(w, &Poly::var())
}

/// `ρ(w)` at a complex point.
pub fn word_matrix_numeric<F: RealScalar>(w: &GroupWord, y: Complex<F>) -> Mat2<Complex<F>> {
    word_matrix_at(w, &y)
}

pub fn trace_poly(w: &GroupWord) -> TracePoly {
    word_matrix_symbolic::<BigInt>(w).trace()
}

fn cos_target(index: HeckoidIndex, k: u32) -> Result<f64> {
    let m = index.m();
    if num_integer::gcd(k, m) != 1 {
        return domain(format!("trace target needs gcd(k, m) = 1, got k = {k}, m = {m}"));
    }
    Ok(2.0 * (std::f64::consts::TAU * k as f64 / m as f64).cos())
}

/// `2cos(2πk/m)`: the trace of an elliptic element of order `m` in `PSL(2,C)`.
pub fn heckoid_trace_target(index: HeckoidIndex, k: u32) -> Result<f64> {
    cos_target(index, k)
}

/// The trace of `ρ(u_r)` in the normalization of this module:
/// `(-1)^m · 2cos(2πk/m)`. For even `m` it equals [`heckoid_trace_target`];
/// for odd `m` the lift of `ρ(u_r)` to `SL(2,C)` has the opposite sign.
pub fn riley_trace_target(index: HeckoidIndex, k: u32) -> Result<f64> {
    let t = cos_target(index, k)?;
    Ok(if index.is_even() { t } else { -t })
}

/// A root of `tr ρ(u_r) - target` with its polynomial residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeckoidRoot {
    pub y: Complex<f64>,
    pub residual: f64,
}

/// All roots of `tr ρ(u_r)(y) = riley_trace_target(m, k)`, sorted by real
/// then imaginary part. A constant polynomial gives no roots.
pub fn heckoid_roots<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex, k: u32) -> Result<Vec<HeckoidRoot>> {
    if !r.in_unit_interval() {
        return domain(format!("Heckoid roots need 0 < r < 1, got {r}"));
    }
    let target = riley_trace_target(index, k)?;
    let poly = trace_poly(&slope_word(r)?);
    let mut coeffs = to_complex_coeffs(&poly);
    if coeffs.len() < 2 {
        return Ok(Vec::new());
    }
    coeffs[0] -= target;
    let roots = poly_roots(&coeffs, &AberthConfig::default())?;
    Ok(roots.into_iter().map(|y| HeckoidRoot { y, residual: residual(&coeffs, y) }).collect())
}

/// Maximum entry modulus.
pub fn matrix_norm<F: RealScalar>(m: &Mat2<Complex<F>>) -> F {
    m.entries().iter().map(|z| z.norm()).fold(F::zero(), F::max)
}

/// `min over ± of ‖m ∓ I‖`, with the sign that attains it.
pub fn distance_to_central<F: RealScalar>(m: &Mat2<Complex<F>>) -> (F, i8) {
    let id: Mat2<Complex<F>> = Mat2::identity();
    let diff = |s: Complex<F>| matrix_norm(&Mat2::new(m.a - s, m.b, m.c, m.d - s));
    let (plus, minus) = (diff(id.a), diff(-id.a));
    if plus <= minus {
        (plus, 1)
    } else {
        (minus, -1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when the measurement is below the threshold.
    Below,
    /// Passes when the measurement is above the threshold.
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
    /// Which of `±I` (or `±` trace) was matched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

impl Check {
    fn below(name: &str, residual: f64, tolerance: f64, sign: Option<i8>) -> Self {
        Check { name: name.into(), residual, tolerance, bound: Bound::Below, passed: residual < tolerance, sign }
    }

    fn above(name: &str, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), residual, tolerance, bound: Bound::Above, passed: residual > tolerance, sign: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Checks made at one Heckoid root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub root: Complex<f64>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl CertificationReport {
    fn new(root: Complex<f64>, checks: Vec<Check>) -> Self {
        let verdict = if checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
        CertificationReport { root, checks, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Whether every report passes; `true` for an empty list.
pub fn all_pass(reports: &[CertificationReport]) -> bool {
    reports.iter().all(CertificationReport::passed)
}

/// Parameters shared by the certification entry points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// `k` in the trace target `2cos(2πk/m)`.
    pub k: u32,
    pub tol: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { k: 1, tol: DEFAULT_TOL }
    }
}

impl CertifyOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return domain(format!("tolerance must be positive, got {}", self.tol));
        }
        Ok(())
    }
}

fn trace_condition_check<I: IntScalar>(lambda: &Lambda<I>, ur: &GroupWord, y: Complex<f64>, opts: &CertifyOptions) -> Result<Check> {
    let target = riley_trace_target(lambda.index(), opts.k)?;
    let t = word_matrix_numeric(ur, y).trace();
    Ok(Check::below("trace_condition", (t - target).norm(), opts.tol, None))
}

/// `u_s` for a finite slope, the empty word for `∞`.
fn word_or_empty<I: IntScalar>(s: &Slope<I>) -> Result<GroupWord> {
    if s.is_infinite() {
        Ok(GroupWord::identity())
    } else {
        slope_word(s)
    }
}

/// Evaluates `extra` at every Heckoid root of `lambda`, in parallel, after a
/// trace-condition check.
fn per_root<I, F>(lambda: &Lambda<I>, opts: &CertifyOptions, extra: F) -> Result<Vec<CertificationReport>>
where
    I: IntScalar,
    F: Fn(Complex<f64>) -> Vec<Check> + Sync,
{
    opts.validate()?;
    let ur = slope_word(lambda.r())?;
    let roots = heckoid_roots(lambda.r(), lambda.index(), opts.k)?;
    roots
        .par_iter()
        .map(|root| {
            let mut checks = vec![trace_condition_check(lambda, &ur, root.y, opts)?];
            checks.extend(extra(root.y));
            Ok(CertificationReport::new(root.y, checks))
        })
        .collect()
}

fn identity_check(name: &str, w: &GroupWord, y: Complex<f64>, tol: f64) -> Check {
    let (d, sign) = distance_to_central(&word_matrix_numeric(w, y));
    Check::below(name, d, tol, Some(sign))
}

/// `ρ(u_r)^m ≈ ±I` while `ρ(u_r)` stays away from `±I`.
pub fn elliptic_order_check<I: IntScalar>(lambda: &Lambda<I>, opts: &CertifyOptions, separation: f64) -> Result<Vec<CertificationReport>> {
    let ur = slope_word(lambda.r())?;
    let m = lambda.index().m() as u64;
    per_root(lambda, opts, |y| {
        let rho = word_matrix_numeric(&ur, y);
        let (d_pow, sign) = distance_to_central(&rho.pow(m));
        let (d_one, _) = distance_to_central(&rho);
        vec![Check::below("power_is_central", d_pow, opts.tol, Some(sign)), Check::above("not_central", d_one, separation)]
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpimorphismCertificate<I: IntScalar = i64> {
    pub route: EpiRoute,
    pub orbit_slope: Slope<I>,
    pub witness: OrbitWitness,
    pub reports: Vec<CertificationReport>,
}

impl<I: IntScalar> EpimorphismCertificate<I> {
    pub fn passed(&self) -> bool {
        all_pass(&self.reports)
    }
}

/// Checks `ρ(u_{s'}) ≈ ±I` at every Heckoid root, where `s'` is `s` or `s + 1`,
/// whichever lies in the orbit. Fails with a precondition error when no
/// orbit witness is found within the budget.
pub fn certify_epimorphism<I: IntScalar>(
    s: &Slope<I>,
    lambda: &Lambda<I>,
    budget: &SearchBudget,
    opts: &CertifyOptions,
) -> Result<EpimorphismCertificate<I>> {
    let Epimorphism::Yes { route, orbit_slope, witness } = admits_epimorphism(s, lambda, budget)? else {
        return Err(Error::Precondition(format!("no orbit witness for {s} or {s}+1 within the search budget")));
    };
    let w = word_or_empty(&orbit_slope)?;
    let reports = per_root(lambda, opts, |y| vec![identity_check("word_is_central", &w, y, opts.tol)])?;
    Ok(EpimorphismCertificate { route, orbit_slope, witness, reports })
}

fn require_witness<I: IntScalar>(s: &Slope<I>, lambda: &Lambda<I>, budget: &SearchBudget) -> Result<OrbitWitness> {
    is_in_orbit(s, lambda, budget)?
        .witness()
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("{s} has no orbit witness within the search budget")))
}

/// `|tr ρ(u_s) ∓ tr ρ(u_{s'})| < tol` at every Heckoid root. The two
/// classes agree up to the central sign of the lift, so the better of the two
/// signs is reported.
pub fn trace_invariance_check<I: IntScalar>(
    s: &Slope<I>,
    s2: &Slope<I>,
    lambda: &Lambda<I>,
    budget: &SearchBudget,
    opts: &CertifyOptions,
) -> Result<Vec<CertificationReport>> {
    require_witness(s, lambda, budget)?;
    require_witness(s2, lambda, budget)?;
    let (w1, w2) = (word_or_empty(s)?, word_or_empty(s2)?);
    per_root(lambda, opts, |y| {
        let (t1, t2) = (word_matrix_numeric(&w1, y).trace(), word_matrix_numeric(&w2, y).trace());
        let (same, flipped) = ((t1 - t2).norm(), (t1 + t2).norm());
        let (d, sign) = if same <= flipped { (same, 1) } else { (flipped, -1) };
        vec![Check::below("trace_equality", d, opts.tol, Some(sign))]
    })
}

/// `ρ(u_s) ≈ ±I` at every Heckoid root, for `s` carrying an orbit witness.
pub fn divisibility_check<I: IntScalar>(
    s: &Slope<I>,
    lambda: &Lambda<I>,
    budget: &SearchBudget,
    opts: &CertifyOptions,
) -> Result<Vec<CertificationReport>> {
    require_witness(s, lambda, budget)?;
    divisibility_probe(s, lambda, opts)
}

/// The same residuals as [`divisibility_check`] without requiring a witness;
/// used for negative controls.
pub fn divisibility_probe<I: IntScalar>(s: &Slope<I>, lambda: &Lambda<I>, opts: &CertifyOptions) -> Result<Vec<CertificationReport>> {
    let w = word_or_empty(s)?;
    per_root(lambda, opts, |y| vec![identity_check("word_is_central", &w, y, opts.tol)])
}

/// Converts an exact polynomial to complex coefficients.
pub fn to_complex_coeffs(p: &TracePoly) -> Vec<Complex<f64>> {
    p.coeffs().iter().map(|c| Complex::from(c.to_f64().unwrap_or(f64::NAN))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn word(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn p(c: &[i64]) -> TracePoly {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn lambda(r: &str, m: u32) -> Lambda {
        Lambda::new(r.parse().unwrap(), HeckoidIndex::from_m(m).unwrap()).unwrap()
    }

    #[test]
    fn symbolic_examples() {
        let a = word_matrix_symbolic::<BigInt>(&word("a"));
        assert_eq!(a, Mat2::new(p(&[1]), p(&[1]), p(&[]), p(&[1])));
        let ab = word_matrix_symbolic::<BigInt>(&word("ab"));
        assert_eq!(ab, Mat2::new(p(&[1, 1]), p(&[1]), p(&[0, 1]), p(&[1])));
        assert_eq!(trace_poly(&word("ab")), p(&[2, 1]));
        assert_eq!(trace_poly(&word("a")), p(&[2]));
        assert_eq!(word_matrix_symbolic::<BigInt>(&GroupWord::identity()), Mat2::identity());
        assert_eq!(trace_poly(&word("abaBAB")), p(&[2, -1, -2, -1]));
    }

    #[test]
    fn trace_targets() {
        let idx = |m| HeckoidIndex::from_m(m).unwrap();
        assert!(heckoid_trace_target(idx(4), 1).unwrap().abs() < 1e-15);
        assert!((heckoid_trace_target(idx(6), 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((heckoid_trace_target(idx(3), 1).unwrap() + 1.0).abs() < 1e-15);
        assert!((riley_trace_target(idx(3), 1).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(heckoid_trace_target(idx(4), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn roots_of_the_trefoil_condition() {
        let roots = heckoid_roots(&"1/3".parse::<Slope>().unwrap(), HeckoidIndex::from_m(4).unwrap(), 1).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[2].y.re - 0.69562).abs() < 1e-5);
        for r in &roots {
            assert!(r.residual < 1e-12);
        }
        assert!(heckoid_roots(&"4/3".parse::<Slope>().unwrap(), HeckoidIndex::from_m(4).unwrap(), 1).is_err());
    }

    #[test]
    fn certify_examples() {
        let opts = CertifyOptions::default();
        let budget = SearchBudget::default();
        let c = certify_epimorphism(&"13/36".parse().unwrap(), &lambda("1/3", 4), &budget, &opts).unwrap();
        assert!(c.passed(), "{:?}", c.reports);
        assert_eq!(c.reports.len(), 3);
        let c = certify_epimorphism(&"25/36".parse().unwrap(), &lambda("2/3", 4), &budget, &opts).unwrap();
        assert!(c.passed());
        let inf = certify_epimorphism(&Slope::infinity(), &lambda("2/3", 4), &budget, &opts).unwrap();
        assert!(inf.passed());
        assert!(inf.reports.iter().all(|r| r.checks[1].residual == 0.0));
        let tight = SearchBudget { max_word_len: 1, max_den: 5, t_max: 1, c_bound: 1, reflection_span: 1 };
        assert!(matches!(certify_epimorphism(&"1/3".parse().unwrap(), &lambda("2/3", 4), &tight, &opts), Err(Error::Precondition(_))));
    }

    #[test]
    fn trace_invariance_examples() {
        let opts = CertifyOptions::default();
        let budget = SearchBudget::default();
        let l = lambda("1/3", 4);
        let s: Slope = "13/36".parse().unwrap();
        for other in ["59/36", "-13/36"] {
            let reports = trace_invariance_check(&s, &other.parse().unwrap(), &l, &budget, &opts).unwrap();
            assert!(all_pass(&reports), "{other}: {reports:?}");
        }
        let same = trace_invariance_check(&s, &s, &l, &budget, &opts).unwrap();
        assert!(same.iter().all(|r| r.checks[1].residual == 0.0));
    }

    #[test]
    fn divisibility_and_negative_control() {
        let opts = CertifyOptions::default();
        let budget = SearchBudget::default();
        assert!(all_pass(&divisibility_check(&"13/36".parse().unwrap(), &lambda("1/3", 4), &budget, &opts).unwrap()));
        assert!(all_pass(&divisibility_check(&"25/36".parse().unwrap(), &lambda("2/3", 4), &budget, &opts).unwrap()));
        let control = divisibility_probe(&"1/3".parse().unwrap(), &lambda("2/3", 4), &opts).unwrap();
        assert!(!all_pass(&control));
    }

    #[test]
    fn elliptic_order() {
        for (r, m) in [("1/3", 4), ("2/3", 4), ("1/3", 3), ("2/5", 5), ("1/2", 6)] {
            let reports = elliptic_order_check(&lambda(r, m), &CertifyOptions::default(), 1e-3).unwrap();
            assert!(!reports.is_empty());
            assert!(all_pass(&reports), "{r} {m}: {reports:?}");
        }
    }

    #[test]
    fn report_json_shape() {
        let report = CertificationReport::new(Complex::new(0.5, -1.0), vec![Check::below("x", 1e-12, 1e-9, Some(-1))]);
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(v["root"], serde_json::json!([0.5, -1.0]));
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["checks"][0]["sign"], -1);
    }

    fn arb_word(max: usize) -> impl Strategy<Value = GroupWord> {
        prop::collection::vec(0u8..4, 0..=max)
            .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|i| [Letter::A, Letter::AInv, Letter::B, Letter::BInv][i as usize])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn determinant_is_one(w in arb_word(60)) {
            prop_assert_eq!(word_matrix_symbolic::<BigInt>(&w).det(), Poly::one());
        }

        #[test]
        fn trace_at_zero_is_two(w in arb_word(60)) {
            prop_assert_eq!(trace_poly(&w).eval(&BigInt::zero()), BigInt::from(2));
        }

        #[test]
        fn trace_is_a_conjugacy_invariant(w in arb_word(30), g in arb_word(15)) {
            prop_assert_eq!(trace_poly(&w.conjugate(&g)), trace_poly(&w));
            prop_assert_eq!(trace_poly(&w.inverse()), trace_poly(&w));
        }

        #[test]
        fn numeric_matches_symbolic(w in arb_word(60), re in -0.5f64..0.5, im in -0.5f64..0.5) {
            let y = Complex::new(re, im);
            let num = word_matrix_numeric(&w, y);
            let sym = word_matrix_symbolic::<BigInt>(&w).map(|e| e.eval_with(&y, |c| Complex::from(c.to_f64().unwrap())));
            for (a, b) in num.entries().iter().zip(sym.entries()) {
                prop_assert!((**a - *b).norm() <= 1e-12 * (1.0 + b.norm()), "{} vs {}", a, b);
            }
        }
    }
}
