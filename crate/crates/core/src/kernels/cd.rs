//! Christoffel–Darboux integral forms of the Bessel and Airy kernels.

use crate::error::{Error, Result};
use crate::quadrature::Adaptive;
use crate::scalar::Real;
use crate::special::{airy_ai, bessel_j};

/// `(γ/4)·∫₀¹ J_α(√(xs))·J_α(√(ts)) ds`, integrated in `u = √s`.
pub fn bessel_cd<T: Real>(alpha: T, gamma: T, x: T, t: T) -> Result<T> {
    if !(x >= T::zero()) || !(t >= T::zero()) {
        return Err(Error::arg("bessel_cd: arguments must be non-negative"));
    }
    bessel_j(alpha, T::zero())?;
    let (rx, rt) = (x.sqrt(), t.sqrt());
    let quad = Adaptive::new(T::lit(1e-14));
    let mut failure = None;
    let v = quad.integrate(
        |u| match (bessel_j(alpha, rx * u), bessel_j(alpha, rt * u)) {
            (Ok(a), Ok(b)) => T::lit(2.0) * u * a * b,
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                T::zero()
            }
        },
        T::zero(),
        T::one(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(gamma * T::lit(0.25) * v)
}

/// Upper limit `s` beyond which `|Ai(x+s)·Ai(t+s)| ≤ 1e-16`.
pub fn airy_cd_reach<T: Real>(x: T, t: T) -> T {
    let lead = x.min(t);
    // start past the last turning point so the product decays monotonically
    let mut s = (T::lit(-1.02) - lead).max(T::zero());
    while (airy_ai(x + s) * airy_ai(t + s)).abs() > T::lit(1e-16) {
        s += T::lit(0.25);
    }
    s
}

/// `∫₀^∞ Ai(x+s)·Ai(t+s) ds`, truncated at [`airy_cd_reach`].
pub fn airy_cd<T: Real>(x: T, t: T) -> Result<T> {
    if !x.is_finite() || !t.is_finite() {
        return Err(Error::arg("airy_cd: arguments must be finite"));
    }
    let reach = airy_cd_reach(x, t);
    Ok(panels(|s| airy_ai(x + s) * airy_ai(t + s), T::zero(), reach))
}

/// Right side of the general Christoffel–Darboux form
/// `k(x,t) = ∫₀^∞ A(u+x)·[v(u+x) − v(u+t)]/(π(x−t))·A(u+t) du`
/// truncated at `reach`; `dv` supplies `v′` for the diagonal.
///
/// Fails with [`Error::Truncation`] if the integrand is still above `1e-13`
/// at `reach`.
pub fn general_cd<T, A, V, D>(a: A, v: V, dv: D, x: T, t: T, reach: T) -> Result<T>
where
    T: Real,
    A: Fn(T) -> T,
    V: Fn(T) -> T,
    D: Fn(T) -> T,
{
    if !(reach > T::zero()) {
        return Err(Error::arg("general_cd: truncation must be positive"));
    }
    let integrand = |u: T| {
        let ratio = if x == t { dv(u + x) } else { (v(u + x) - v(u + t)) / (x - t) };
        a(u + x) * ratio * a(u + t) / T::PI()
    };
    let tail = integrand(reach).abs();
    if !(tail <= T::lit(1e-13)) {
        return Err(Error::Truncation { at: reach.as_f64(), value: tail.as_f64() });
    }
    Ok(panels(integrand, T::zero(), reach))
}

fn panels<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> T {
    let quad = Adaptive::new(T::lit(1e-15));
    let count = ((b - a).ceil()).max(T::one());
    let n = count.to_usize().unwrap_or(1);
    let h = (b - a) / count;
    (0..n).fold(T::zero(), |acc, i| {
        let l = a + h * T::of(i);
        acc + quad.integrate(&f, l, l + h)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::airy;

    #[test]
    fn airy_cd_on_diagonal() {
        for &x in &[0.0f64, 1.0, 2.0] {
            let (ai, aip) = airy(x);
            assert!((airy_cd(x, x).unwrap() - (aip * aip - x * ai * ai)).abs() < 1e-12);
        }
    }

    #[test]
    fn general_reduces_to_airy() {
        let a = |u: f64| std::f64::consts::PI.sqrt() * airy_ai(u);
        for &(x, t) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 0.5)] {
            let g = general_cd(a, |u| u, |_| 1.0, x, t, 12.0).unwrap();
            assert!((g - airy_cd(x, t).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_failure_is_reported() {
        let a = |u: f64| std::f64::consts::PI.sqrt() * airy_ai(u);
        let e = general_cd(a, |u| u, |_| 1.0, 0.0, 0.0, 2.0).unwrap_err();
        assert!(matches!(e, Error::Truncation { .. }));
    }

    #[test]
    fn bessel_cd_positive_on_diagonal() {
        for &alpha in &[0.0, 0.5, 2.0] {
            for &x in &[0.1, 1.0, 4.0] {
                assert!(bessel_cd(alpha, 0.5f64, x, x).unwrap() > 0.0);
            }
        }
    }
}
