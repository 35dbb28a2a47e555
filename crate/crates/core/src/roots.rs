//! Simultaneous polynomial root finding (Aberth-Ehrlich) with deterministic
//! starting points and a final Newton polish.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::scalar::RealScalar;

/// Iteration limits for [`poly_roots`].
#[derive(Clone, Copy, Debug)]
pub struct AberthConfig {
    pub max_iter: usize,
    pub newton_steps: usize,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig { max_iter: 1000, newton_steps: 4 }
    }
}

fn horner<F: RealScalar>(c: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

fn finite<F: RealScalar>(z: Complex<F>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `|p(z)|` for coefficients in increasing degree.
pub fn residual<F: RealScalar>(coeffs: &[Complex<F>], z: Complex<F>) -> F {
    horner(coeffs, z).0.norm()
}

/// All complex roots of `Σ c_k z^k`, with multiplicity, sorted by real part
/// then imaginary part. Deterministic: the start points lie on a fixed circle
/// around the centroid of the roots.
pub fn poly_roots<F: RealScalar>(coeffs: &[Complex<F>], cfg: &AberthConfig) -> Result<Vec<Complex<F>>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return domain("root finding needs a polynomial of degree at least 1");
    }
    let n = c.len() - 1;
    let lead = c[n];
    let nf = F::from_usize(n).unwrap();
    let centre = -c[n - 1] / (lead * nf);
    // Fujiwara-style radius bound.
    let radius = (0..n).map(|k| (c[k] / lead).norm().powf(F::one() / F::from_usize(n - k).unwrap())).fold(F::zero(), F::max)
        * F::from_f64(2.0).unwrap();
    let radius = if radius > F::zero() { radius } else { F::one() };
    let offset = F::from_f64(0.4).unwrap();
    let tau = F::TAU();
    let mut z: Vec<Complex<F>> =
        (0..n).map(|k| centre + Complex::from_polar(radius, tau * F::from_usize(k).unwrap() / nf + offset)).collect();
    let eps = F::epsilon() * F::from_f64(4.0).unwrap();
    for _ in 0..cfg.max_iter {
        let mut max_step = F::zero();
        for k in 0..n {
            let (p, dp) = horner(&c, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<F> = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex::from(F::one()) - ratio * repulsion);
            if finite(step) {
                z[k] = z[k] - step;
                max_step = max_step.max(step.norm() / (F::one() + z[k].norm()));
            }
        }
        if max_step <= eps {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..cfg.newton_steps {
            let (p, dp) = horner(&c, *r);
            let step = p / dp;
            if !finite(step) || p.is_zero() {
                break;
            }
            let candidate = *r - step;
            if residual(&c, candidate) < residual(&c, *r) {
                *r = candidate;
            } else {
                break;
            }
        }
    }
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(z)
}

/// Roots of a polynomial with real coefficients.
pub fn real_poly_roots<F: RealScalar>(coeffs: &[F], cfg: &AberthConfig) -> Result<Vec<Complex<F>>> {
    let c: Vec<Complex<F>> = coeffs.iter().map(|&a| Complex::from(a)).collect();
    poly_roots(&c, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, b: Complex<f64>) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn quadratic_and_cubic() {
        let r = real_poly_roots(&[2.0, 0.0, 1.0], &AberthConfig::default()).unwrap();
        assert!(close(r[0], Complex::new(0.0, -2f64.sqrt())));
        assert!(close(r[1], Complex::new(0.0, 2f64.sqrt())));
        // (z-1)(z-2)(z-3)
        let r = real_poly_roots(&[-6.0, 11.0, -6.0, 1.0], &AberthConfig::default()).unwrap();
        for (z, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!(close(*z, Complex::from(want)), "{z}");
        }
    }

    #[test]
    fn riley_cubic_of_the_trefoil_slope() {
        // 2 - y - 2y² - y³ = 0
        let r = real_poly_roots::<f64>(&[2.0, -1.0, -2.0, -1.0], &AberthConfig::default()).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!(residual(&[2.0, -1.0, -2.0, -1.0].map(Complex::from), *z) < 1e-12);
        }
        assert!((r[2].re - 0.69562).abs() < 1e-5 && r[2].im.abs() < 1e-12);
        assert!((r[0].re + 1.3478).abs() < 1e-4 && (r[0].im + 1.0289).abs() < 1e-4);
        assert!((r[1].im - 1.0289).abs() < 1e-4);
    }

    #[test]
    fn roots_of_unity_high_degree() {
        let mut c = vec![0.0f64; 41];
        c[0] = -1.0;
        c[40] = 1.0;
        let r = real_poly_roots(&c, &AberthConfig::default()).unwrap();
        assert_eq!(r.len(), 40);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(40) - Complex::from(1.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn deterministic_and_degenerate_input() {
        let c = [1.0, -3.0, 0.5, 2.0, 1.0];
        assert_eq!(real_poly_roots(&c, &AberthConfig::default()).unwrap(), real_poly_roots(&c, &AberthConfig::default()).unwrap());
        assert!(real_poly_roots(&[3.0], &AberthConfig::default()).is_err());
        assert!(real_poly_roots(&[3.0, 0.0, 0.0], &AberthConfig::default()).is_err());
        let r = real_poly_roots::<f32>(&[-1.0, 0.0, 1.0], &AberthConfig::default()).unwrap();
        assert!((r[0].re + 1.0).abs() < 1e-5 && (r[1].re - 1.0).abs() < 1e-5);
    }
}
