use crate::error::{Error, Result};
use crate::scalar::Real;

/// Error function, absolute error below 1e-14 in double precision.
///
/// Uses the all-positive series `e^{-x²} Σ 2ⁿx^{2n+1}/(2n+1)!!` up to
/// |x| = 3 and the Laplace continued fraction for erfc beyond.
pub fn erf<T: Real>(x: T) -> T {
    let ax = x.abs();
    let v = if ax <= T::lit(3.0) {
        erf_series(ax)
    } else {
        T::one() - erfc_cf(ax)
    };
    if x < T::zero() {
        -v
    } else {
        v
    }
}

/// Complementary error function `1 − erf(x)`, accurate in relative terms for
/// large positive x.
pub fn erfc<T: Real>(x: T) -> T {
    if x > T::lit(3.0) {
        erfc_cf(x)
    } else if x >= T::zero() {
        T::one() - erf_series(x)
    } else {
        T::one() + erf(-x)
    }
}

fn erf_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 1usize;
    loop {
        term *= T::lit(2.0) * x2 / T::of(2 * n + 1);
        sum += term;
        if term <= T::epsilon() * sum * T::lit(0.25) || n > 500 {
            break;
        }
        n += 1;
    }
    T::lit(2.0) / T::PI().sqrt() * (-x2).exp() * sum
}

// erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))
fn erfc_cf<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value().sqrt();
    let mut f = x;
    let mut c = x;
    let mut d = T::zero();
    for k in 1..500 {
        let a = T::of(k) * T::lit(0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f *= delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    (-x * x).exp() / (T::PI().sqrt() * f)
}

/// Closed-form determinant `1 − (√π/2)·erfc(ζ)` of the separable Gaussian
/// operator on `[ζ, ∞)`.
pub fn gaussian_det<T: Real>(zeta: T) -> T {
    T::one() - T::PI().sqrt() * T::lit(0.5) * erfc(zeta)
}

/// Partial sum (terms `0..=nterms`) of the large-ζ expansion
/// `1 − e^{-ζ²}/(2ζ) · Σ (−1)ⁿ (2n−1)!! / (2ⁿ ζ^{2n})`, with `(−1)!! = 1`.
///
/// The series is asymptotic, not convergent: small ζ still yields a finite
/// (and possibly useless) partial sum.
pub fn gaussian_det_asymptotic<T: Real>(zeta: T, nterms: usize) -> Result<T> {
    if !(zeta > T::zero()) || !zeta.is_finite() {
        return Err(Error::arg("gaussian_det_asymptotic: zeta must be positive"));
    }
    let terms = asymptotic_terms(zeta, nterms);
    let s = terms.iter().fold(T::zero(), |a, &t| a + t);
    Ok(T::one() - (-zeta * zeta).exp() / (T::lit(2.0) * zeta) * s)
}

/// Partial sum truncated just before the smallest term.
pub fn gaussian_det_asymptotic_optimal<T: Real>(zeta: T) -> Result<T> {
    if !(zeta > T::zero()) || !zeta.is_finite() {
        return Err(Error::arg("gaussian_det_asymptotic: zeta must be positive"));
    }
    // |t_{n+1}/t_n| = (2n+1)/(2ζ²) < 1 while n < ζ² − 1/2
    let limit = (zeta * zeta - T::lit(0.5)).floor().max(T::zero());
    let nterms = limit.to_usize().unwrap_or(0).min(200);
    gaussian_det_asymptotic(zeta, nterms)
}

fn asymptotic_terms<T: Real>(zeta: T, nterms: usize) -> Vec<T> {
    let z2 = zeta * zeta;
    let mut out = Vec::with_capacity(nterms + 1);
    let mut t = T::one();
    out.push(t);
    for n in 1..=nterms {
        t = -t * T::of(2 * n - 1) / (T::lit(2.0) * z2);
        out.push(t);
    }
    out
}

#[cfg(test)]
mod tests {
    fn erf(x: f64) -> f64 {
        super::erf(x)
    }
    fn erfc(x: f64) -> f64 {
        super::erfc(x)
    }
    fn gaussian_det(x: f64) -> f64 {
        super::gaussian_det(x)
    }
    fn gaussian_det_asymptotic(x: f64, n: usize) -> crate::Result<f64> {
        super::gaussian_det_asymptotic(x, n)
    }
    fn gaussian_det_asymptotic_optimal(x: f64) -> crate::Result<f64> {
        super::gaussian_det_asymptotic_optimal(x)
    }

    // Maclaurin series (2/√π) Σ (−1)ⁿ x^{2n+1}/(n!(2n+1)), fine for |x| ≤ 1.5
    fn maclaurin(x: f64) -> f64 {
        let mut s = 0.0;
        let mut p = x;
        for n in 0..60 {
            s += p / (2 * n + 1) as f64;
            p *= -x * x / (n + 1) as f64;
        }
        2.0 / std::f64::consts::PI.sqrt() * s
    }

    #[test]
    fn reference_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.842700792949715).abs() < 1e-14);
        assert!((erf(1.0) - maclaurin(1.0)).abs() < 1e-15);
        assert!((erf(0.5) - 0.520_499_877_813_046_5).abs() < 1e-15);
        assert!((erf(3.0) - 0.999_977_909_503_001_4).abs() < 1e-15);
        assert!((erf(6.0) - 1.0).abs() < 1e-14);
        assert!((erfc(5.0) / 1.537_459_794_428_035e-12 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_switch_is_continuous() {
        let below = erf(3.0 - 1e-12);
        let above = erf(3.0 + 1e-12);
        assert!((above - below).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_n0_value() {
        let got = gaussian_det_asymptotic(3.0, 0).unwrap();
        assert!((got - (1.0 - (-9f64).exp() / 6.0)).abs() < 1e-16);
    }

    #[test]
    fn asymptotic_matches_closed_form() {
        let closed = gaussian_det(3.0);
        assert!((gaussian_det_asymptotic(3.0, 3).unwrap() - closed).abs() < 1e-6);
        assert!((gaussian_det_asymptotic_optimal(3.0).unwrap() - closed).abs() < 1e-8);
    }

    #[test]
    fn asymptotic_small_zeta_is_finite() {
        let v = gaussian_det_asymptotic(0.1, 5).unwrap();
        assert!(v.is_finite());
        assert!(gaussian_det_asymptotic(0.0, 1).is_err());
    }
}
