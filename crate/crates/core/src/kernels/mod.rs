//! Z-class symbols φ = A + iB, the kernels they generate, and the direct
//! Airy and Gaussian kernels.

mod cd;
mod jmodule;
mod tabulated;

use std::fmt;
use std::sync::Arc;

pub use cd::{airy_cd, airy_cd_reach, bessel_cd, general_cd};
pub use jmodule::{zclass_jmodule, JModule2};
pub use tabulated::TabulatedSymbol;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};
use crate::special::{airy, bessel_j, bessel_j_deriv, bessel_j_x_deriv};

/// Values of a symbol and its derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolValues<T> {
    pub a: T,
    pub b: T,
    pub da: T,
    pub db: T,
}

impl<T: Real> SymbolValues<T> {
    pub fn phi(&self) -> C<T> {
        C::new(self.a, self.b)
    }
}

/// A smooth symbol φ = A + iB on a real interval.
pub trait Symbol<T: Real>: Send + Sync {
    fn eval(&self, x: T) -> Result<SymbolValues<T>>;
}

/// Symbol built from four closures.
pub struct FnSymbol<F> {
    f: F,
}

impl<F> FnSymbol<F> {
    /// `f(x)` returns `(A, B, A′, B′)`.
    pub fn new(f: F) -> Self {
        FnSymbol { f }
    }
}

impl<T: Real, F: Fn(T) -> (T, T, T, T) + Send + Sync> Symbol<T> for FnSymbol<F> {
    fn eval(&self, x: T) -> Result<SymbolValues<T>> {
        let (a, b, da, db) = (self.f)(x);
        Ok(SymbolValues { a, b, da, db })
    }
}

struct Sine<T> {
    root_gamma: T,
}

impl<T: Real> Symbol<T> for Sine<T> {
    fn eval(&self, x: T) -> Result<SymbolValues<T>> {
        let (s, c) = x.sin_cos();
        let r = self.root_gamma;
        Ok(SymbolValues { a: -r * s, b: r * c, da: -r * c, db: -r * s })
    }
}

struct Bessel<T> {
    alpha: T,
    scale: T,
}

impl<T: Real> Symbol<T> for Bessel<T> {
    fn eval(&self, x: T) -> Result<SymbolValues<T>> {
        let (nu, c) = (self.alpha, self.scale);
        let j = bessel_j(nu, x)?;
        let db = if nu == T::zero() { -c * x * j } else { -c * (x - nu * nu / x) * j };
        Ok(SymbolValues {
            a: c * j,
            b: c * bessel_j_x_deriv(nu, x)?,
            da: c * bessel_j_deriv(nu, x)?,
            db,
        })
    }
}

/// `A(x) = c·J_α(√x)`, `B = x·A′`.
struct BesselSqrtArg<T> {
    alpha: T,
    scale: T,
}

impl<T: Real> Symbol<T> for BesselSqrtArg<T> {
    fn eval(&self, x: T) -> Result<SymbolValues<T>> {
        let (nu, c) = (self.alpha, self.scale);
        let u = x.sqrt();
        let j = bessel_j(nu, u)?;
        let uj = bessel_j_x_deriv(nu, u)?;
        let half = T::lit(0.5);
        let quarter = T::lit(0.25);
        let da = if x == T::zero() {
            let two = T::lit(2.0);
            if nu == T::zero() {
                -c * quarter
            } else if nu == two {
                c * T::lit(0.125)
            } else if nu > two {
                T::zero()
            } else {
                T::infinity()
            }
        } else {
            c * uj / (x + x)
        };
        let db = if nu == T::zero() { -c * quarter * j } else { -c * quarter * (T::one() - nu * nu / x) * j };
        Ok(SymbolValues { a: c * j, b: c * half * uj, da, db })
    }
}

/// Built-in kernel families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Sine,
    Bessel,
    BesselSqrtArg,
    Gaussian,
    Airy,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Sine => "sine",
            ProfileKind::Bessel => "bessel",
            ProfileKind::BesselSqrtArg => "bessel_sqrtarg",
            ProfileKind::Gaussian => "gaussian",
            ProfileKind::Airy => "airy",
        }
    }
}

impl std::str::FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sine" => ProfileKind::Sine,
            "bessel" => ProfileKind::Bessel,
            "bessel_sqrtarg" => ProfileKind::BesselSqrtArg,
            "gaussian" => ProfileKind::Gaussian,
            "airy" => ProfileKind::Airy,
            other => return Err(Error::arg(format!("unknown kernel `{other}`"))),
        })
    }
}

/// Parameters of the built-in profiles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params<T> {
    pub gamma: T,
    /// Bessel order.
    pub alpha: T,
}

impl<T: Real> Default for Params<T> {
    fn default() -> Self {
        Params { gamma: T::one(), alpha: T::zero() }
    }
}

#[derive(Clone)]
enum Shape<T: Real> {
    ZClass(Arc<dyn Symbol<T>>),
    Airy,
    Gaussian,
}

/// Kernel kind as seen by the operator code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    ZClass,
    Airy,
    Gaussian,
}

/// A kernel together with its domain.
#[derive(Clone)]
pub struct KernelProfile<T: Real> {
    shape: Shape<T>,
    lo: T,
    hi: T,
    name: String,
}

impl<T: Real> fmt::Debug for KernelProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelProfile")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("domain", &(self.lo, self.hi))
            .finish()
    }
}

/// Constructs a built-in profile.
///
/// `sine` and the two Bessel profiles need `0 ≤ γ ≤ 1`; Bessel needs `α > −1/2`.
pub fn builtin_profile<T: Real>(kind: ProfileKind, params: Params<T>) -> Result<KernelProfile<T>> {
    let Params { gamma, alpha } = params;
    let zclass = matches!(kind, ProfileKind::Sine | ProfileKind::Bessel | ProfileKind::BesselSqrtArg);
    if zclass && !(gamma >= T::zero() && gamma <= T::one()) {
        return Err(Error::OutOfDomain { value: gamma.as_f64(), lo: 0.0, hi: 1.0 });
    }
    if matches!(kind, ProfileKind::Bessel | ProfileKind::BesselSqrtArg) && !(alpha > T::lit(-0.5) && alpha.is_finite()) {
        return Err(Error::arg(format!("bessel order {alpha} must exceed -1/2")));
    }
    let inf = T::infinity();
    let scale = (gamma * T::PI()).sqrt();
    let (shape, lo, hi): (Shape<T>, T, T) = match kind {
        ProfileKind::Sine => (Shape::ZClass(Arc::new(Sine { root_gamma: gamma.sqrt() })), -inf, inf),
        ProfileKind::Bessel => (Shape::ZClass(Arc::new(Bessel { alpha, scale })), T::zero(), inf),
        ProfileKind::BesselSqrtArg => (Shape::ZClass(Arc::new(BesselSqrtArg { alpha, scale })), T::zero(), inf),
        ProfileKind::Gaussian => (Shape::Gaussian, -inf, inf),
        ProfileKind::Airy => (Shape::Airy, -inf, inf),
    };
    let name = match kind {
        ProfileKind::Sine => format!("sine(gamma={gamma})"),
        ProfileKind::Bessel | ProfileKind::BesselSqrtArg => format!("{}(alpha={alpha},gamma={gamma})", kind.name()),
        _ => kind.name().to_string(),
    };
    Ok(KernelProfile { shape, lo, hi, name })
}

impl<T: Real> KernelProfile<T> {
    /// A Z-class profile from a caller-supplied symbol on `[a, b]`.
    pub fn custom(symbol: impl Symbol<T> + 'static, a: T, b: T, name: impl Into<String>) -> Result<Self> {
        if !(a < b) {
            return Err(Error::arg("custom profile needs a < b"));
        }
        Ok(KernelProfile { shape: Shape::ZClass(Arc::new(symbol)), lo: a, hi: b, name: name.into() })
    }

    pub fn kind(&self) -> Kind {
        match self.shape {
            Shape::ZClass(_) => Kind::ZClass,
            Shape::Airy => Kind::Airy,
            Shape::Gaussian => Kind::Gaussian,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn check_domain(&self, x: T) -> Result<()> {
        if x >= self.lo && x <= self.hi {
            Ok(())
        } else {
            Err(Error::OutOfDomain { value: x.as_f64(), lo: self.lo.as_f64(), hi: self.hi.as_f64() })
        }
    }

    /// A, B and their derivatives; Z-class only.
    pub fn symbol(&self, x: T) -> Result<SymbolValues<T>> {
        match &self.shape {
            Shape::ZClass(s) => {
                self.check_domain(x)?;
                s.eval(x)
            }
            _ => Err(Error::WrongKind(self.kind_name())),
        }
    }

    pub fn phi(&self, x: T) -> Result<C<T>> {
        Ok(self.symbol(x)?.phi())
    }

    /// ψ = φ²/2.
    pub fn psi(&self, x: T) -> Result<C<T>> {
        let p = self.phi(x)?;
        Ok(p * p * T::lit(0.5))
    }

    /// The kernel value of the family (Z-class κ, Airy k, Gaussian k).
    pub fn kernel_eval(&self, x: T, t: T) -> Result<T> {
        self.check_domain(x)?;
        self.check_domain(t)?;
        match &self.shape {
            Shape::ZClass(s) => {
                let u = s.eval(x)?;
                if x == t {
                    return Ok((u.da * u.b - u.a * u.db) / T::PI());
                }
                let v = s.eval(t)?;
                Ok((u.a * v.b - u.b * v.a) / (T::PI() * (x - t)))
            }
            Shape::Airy => {
                let (ax, dx) = airy(x);
                if x == t {
                    return Ok(dx * dx - x * ax * ax);
                }
                let (at, dt) = airy(t);
                Ok((ax * dt - dx * at) / (x - t))
            }
            Shape::Gaussian => Ok((-(x * x + t * t) * T::lit(0.5)).exp()),
        }
    }

    /// The kernel part of `S` as it enters the Nyström matrix:
    /// `+κ` for Z-class, `−k` for Airy and Gaussian.
    pub fn operator_kernel(&self, x: T, t: T) -> Result<T> {
        let k = self.kernel_eval(x, t)?;
        Ok(match self.shape {
            Shape::ZClass(_) => k,
            _ => -k,
        })
    }

    /// Default right end for the semi-infinite kinds, starting from `left`.
    pub fn truncation(&self, left: T) -> Option<T> {
        match self.shape {
            Shape::Airy => Some(airy_truncation(left)),
            Shape::Gaussian => Some(left.max(T::zero()) + T::lit(8.0)),
            Shape::ZClass(_) => None,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.shape {
            Shape::ZClass(_) => "zclass",
            Shape::Airy => "airy",
            Shape::Gaussian => "gaussian",
        }
    }
}

/// F₁(x) = (φ, −φ̄).
pub fn f1_vector<T: Real>(profile: &KernelProfile<T>, x: T) -> Result<[C<T>; 2]> {
    let p = profile.phi(x)?;
    Ok([p, -p.conj()])
}

/// Smallest right end `ζ + L` with `Ai(ζ + L)² ≤ 1e-18`.
pub fn airy_truncation<T: Real>(zeta: T) -> T {
    let target = T::lit(1e-9);
    // Ai is positive and decreasing beyond its first zero.
    let mut lo = zeta.max(T::lit(-2.3381));
    if airy(lo).0 <= target {
        return lo;
    }
    let mut hi = lo + T::one();
    while airy(hi).0 > target {
        lo = hi;
        hi += T::one();
    }
    for _ in 0..60 {
        let mid = (lo + hi) * T::lit(0.5);
        if airy(mid).0 > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
