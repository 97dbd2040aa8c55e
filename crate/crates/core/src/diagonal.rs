//! The triangular model `(Af)(x) = x·f(x) + iα∫₀ˣ f(t)dt` on `[0, ℓ]` and the
//! fractional integration `B = 𝒥^{iα}` that turns it into multiplication by `x`.
//!
//! On generalized monomials `𝒥^s x^β = Γ(β+1)/Γ(β+1+s)·x^{β+s}`, so
//! polynomials are handled exactly up to the accuracy of log Γ.

use crate::error::{Error, Result};
use crate::quadrature::Adaptive;
use crate::scalar::{Real, C};
use crate::special::ln_gamma;

/// Highest supported polynomial degree.
pub const MAX_DEGREE: usize = 12;

/// A polynomial `Σ cₙ tⁿ` on `[0, ℓ]` together with the model parameter α.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySample<T> {
    pub coeffs: Vec<C<T>>,
    pub ell: T,
    pub alpha: T,
}

impl<T: Real> PolySample<T> {
    pub fn new(coeffs: Vec<C<T>>, ell: T, alpha: T) -> Result<Self> {
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::arg(format!("degree {} exceeds {MAX_DEGREE}", coeffs.len() - 1)));
        }
        if !(ell > T::zero()) || !ell.is_finite() || !alpha.is_finite() {
            return Err(Error::arg("need finite ell > 0 and finite alpha"));
        }
        Ok(PolySample { coeffs, ell, alpha })
    }

    /// `tⁿ`.
    pub fn monomial(n: usize, ell: T, alpha: T) -> Result<Self> {
        let mut c = vec![C::new(T::zero(), T::zero()); n + 1];
        c[n] = C::new(T::one(), T::zero());
        Self::new(c, ell, alpha)
    }

    pub fn eval(&self, x: T) -> C<T> {
        self.coeffs.iter().rev().fold(C::new(T::zero(), T::zero()), |acc, &c| acc * x + c)
    }

    /// Coefficients of `A p`, one degree higher.
    fn apply_a(&self) -> Vec<C<T>> {
        let mut out = vec![C::new(T::zero(), T::zero()); self.coeffs.len() + 1];
        for (n, &c) in self.coeffs.iter().enumerate() {
            let k = T::of(n + 1);
            out[n + 1] = c * C::new(T::one(), self.alpha / k);
        }
        out
    }

    fn check(&self, x: T) -> Result<()> {
        if !(x > T::zero() && x <= self.ell) {
            return Err(Error::OutOfDomain { value: x.as_f64(), lo: 0.0, hi: self.ell.as_f64() });
        }
        Ok(())
    }
}

/// Finite sum `Σ cₖ x^{βₖ}` with complex exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct GenPoly<T> {
    pub terms: Vec<(C<T>, C<T>)>,
}

impl<T: Real> GenPoly<T> {
    pub fn from_poly(coeffs: &[C<T>]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(n, &c)| (c, C::new(T::of(n), T::zero()))).collect();
        GenPoly { terms }
    }

    /// `𝒥^s` termwise.
    pub fn integrate_fractional(&self, s: C<T>) -> Result<Self> {
        let one = C::new(T::one(), T::zero());
        let terms = self
            .terms
            .iter()
            .map(|&(c, beta)| Ok((c * (ln_gamma(beta + one)? - ln_gamma(beta + one + s)?).exp(), beta + s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GenPoly { terms })
    }

    pub fn eval(&self, x: T) -> C<T> {
        let lx = x.ln();
        self.terms.iter().fold(C::new(T::zero(), T::zero()), |acc, &(c, beta)| acc + c * (beta * lx).exp())
    }
}

/// `(A p)(x) = x·p(x) + iα∫₀ˣ p(t)dt`.
pub fn volterra_a<T: Real>(p: &PolySample<T>, x: T) -> Result<C<T>> {
    if !(x > T::zero() && x < p.ell) {
        return Err(Error::OutOfDomain { value: x.as_f64(), lo: 0.0, hi: p.ell.as_f64() });
    }
    let integral = p
        .coeffs
        .iter()
        .enumerate()
        .fold(C::new(T::zero(), T::zero()), |acc, (n, &c)| acc + c * (x.powi(n as i32 + 1) / T::of(n + 1)));
    Ok(p.eval(x) * x + integral * C::new(T::zero(), p.alpha))
}

/// `B p` (sign `+1`) or `B⁻¹ p` (sign `−1`) at `x`, via the monomial closed
/// form `n!·x^{n±iα}/Γ(n+1±iα)`.
pub fn frac_power<T: Real>(p: &PolySample<T>, sign: i32, x: T) -> Result<C<T>> {
    p.check(x)?;
    Ok(GenPoly::from_poly(&p.coeffs).integrate_fractional(exponent(p.alpha, sign)?)?.eval(x))
}

/// `𝒥^{±iα} f` at `x` for a general smooth `f` by
/// `(1/Γ(1+s))·[f(0)·x^s + ∫₀ˣ f′(t)(x−t)^s dt]`, `s = ±iα`, with the
/// integral taken in `x − t = x·e^{−v}` and cut at `v = 40`.
///
/// No accuracy contract; intended for spot checks.
pub fn frac_power_quadrature<T: Real>(
    f0: C<T>,
    df: impl Fn(T) -> C<T>,
    alpha: T,
    sign: i32,
    x: T,
) -> Result<C<T>> {
    if !(x > T::zero()) {
        return Err(Error::arg("frac_power_quadrature needs x > 0"));
    }
    let s = exponent(alpha, sign)?;
    let one = C::new(T::one(), T::zero());
    let lx = x.ln();
    let quad = Adaptive::new(T::lit(1e-13));
    let integrand = |v: T| {
        let u = x * (-v).exp();
        df(x - u) * ((one + s) * (lx - v)).exp()
    };
    let mut integral = C::new(T::zero(), T::zero());
    let mut v = T::zero();
    while v < T::lit(40.0) {
        integral += quad.integrate_complex(integrand, v, v + T::one());
        v += T::one();
    }
    let head = f0 * (s * lx).exp();
    Ok((head + integral) * (-ln_gamma(one + s)?).exp())
}

/// `max |B(Ap)(x) − x·(Bp)(x)|` over the grid.
pub fn similarity_residual<T: Real>(p: &PolySample<T>, grid: &[T]) -> Result<T> {
    let s = exponent(p.alpha, 1)?;
    let bp = GenPoly::from_poly(&p.coeffs).integrate_fractional(s)?;
    let bap = GenPoly::from_poly(&p.apply_a()).integrate_fractional(s)?;
    grid.iter().try_fold(T::zero(), |m, &x| {
        p.check(x)?;
        Ok(m.max((bap.eval(x) - bp.eval(x) * x).norm()))
    })
}

/// `max |B⁻¹(Bp)(x) − p(x)|` over the grid.
pub fn composition_residual<T: Real>(p: &PolySample<T>, grid: &[T]) -> Result<T> {
    let s = exponent(p.alpha, 1)?;
    let back = GenPoly::from_poly(&p.coeffs).integrate_fractional(s)?.integrate_fractional(-s)?;
    grid.iter().try_fold(T::zero(), |m, &x| {
        p.check(x)?;
        Ok(m.max((back.eval(x) - p.eval(x)).norm()))
    })
}

/// `n!/|Γ(n+1+iα)|`, the sup-norm gain of `B` on `tⁿ` over `[0, ℓ]`.
pub fn monomial_gain<T: Real>(n: usize, alpha: T) -> Result<T> {
    let b = C::new(T::of(n + 1), T::zero());
    Ok((ln_gamma(b)? - ln_gamma(b + C::new(T::zero(), alpha))?).exp().norm())
}

fn exponent<T: Real>(alpha: T, sign: i32) -> Result<C<T>> {
    match sign {
        1 => Ok(C::new(T::zero(), alpha)),
        -1 => Ok(C::new(T::zero(), -alpha)),
        _ => Err(Error::arg(format!("sign must be +1 or -1, got {sign}"))),
    }
}
