//! Scalar maximal spectral factor `W(z) = exp(−i∫ σ′(t)/(t − z) dt)` with
//! `σ′ = log R/π`, so that `|W(x + i0)| = R(x)`.

use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::quadrature::Adaptive;
use crate::scalar::{Real, C};

/// `log R` on `[a, b]`, with `R ≥ 1` there and `R = 1` outside.
#[derive(Clone)]
pub struct ModulusProfile<T> {
    pub a: T,
    pub b: T,
    log_r: Arc<dyn Fn(T) -> T + Send + Sync>,
    /// Declared upper bound of `log R`.
    pub log_bound: T,
}

impl<T: Real> std::fmt::Debug for ModulusProfile<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModulusProfile").field("a", &self.a).field("b", &self.b).field("log_bound", &self.log_bound).finish()
    }
}

#[derive(Deserialize)]
struct Sample {
    x: f64,
    #[serde(rename = "R")]
    r: f64,
}

impl<T: Real> ModulusProfile<T> {
    /// Checks `0 ≤ log R ≤ log_bound` on a 1000-point scan.
    pub fn new(a: T, b: T, log_r: impl Fn(T) -> T + Send + Sync + 'static, log_bound: T) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::arg("modulus profile needs finite a < b"));
        }
        for k in 0..=1000 {
            let x = a + (b - a) * T::of(k) / T::lit(1000.0);
            let v = log_r(x);
            if !(v >= T::zero() && v <= log_bound) {
                return Err(Error::arg(format!("log R({x}) = {v} outside [0, {log_bound}]")));
            }
        }
        Ok(ModulusProfile { a, b, log_r: Arc::new(log_r), log_bound })
    }

    /// `R ≡ e^c` on `[a, b]`.
    pub fn constant(a: T, b: T, log_value: T) -> Result<Self> {
        Self::new(a, b, move |_| log_value, log_value)
    }

    /// Samples `x,R` with ascending `x` and `R ≥ 1`; `log R` is linearly
    /// interpolated. Row numbers in errors count data rows from 1.
    pub fn from_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut xs: Vec<T> = Vec::new();
        let mut ls: Vec<T> = Vec::new();
        for (i, rec) in rdr.deserialize::<Sample>().enumerate() {
            let row = i + 1;
            let s = rec.map_err(|e| Error::Csv { row, msg: e.to_string() })?;
            if !s.x.is_finite() || !s.r.is_finite() {
                return Err(Error::Csv { row, msg: "non-finite value".into() });
            }
            if s.r < 1.0 {
                return Err(Error::Csv { row, msg: format!("R = {} below 1", s.r) });
            }
            if let Some(&last) = xs.last() {
                if !(T::lit(s.x) > last) {
                    return Err(Error::Csv { row, msg: "x must be strictly ascending".into() });
                }
            }
            xs.push(T::lit(s.x));
            ls.push(T::lit(s.r.ln()));
        }
        if xs.len() < 2 {
            return Err(Error::Csv { row: xs.len(), msg: "need at least two samples".into() });
        }
        let bound = ls.iter().fold(T::zero(), |m, &v| m.max(v));
        let (a, b) = (xs[0], xs[xs.len() - 1]);
        Self::new(a, b, move |x| linear(&xs, &ls, x), bound)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let f = std::fs::File::open(path.as_ref()).map_err(|e| Error::Io(e.to_string()))?;
        Self::from_reader(f)
    }

    pub fn log_r(&self, x: T) -> T {
        if x < self.a || x > self.b {
            T::zero()
        } else {
            (self.log_r)(x)
        }
    }

    pub fn r(&self, x: T) -> T {
        self.log_r(x).exp()
    }

    pub fn dist(&self, z: C<T>) -> T {
        let dx = if z.re < self.a {
            self.a - z.re
        } else if z.re > self.b {
            z.re - self.b
        } else {
            T::zero()
        };
        dx.hypot(z.im)
    }
}

fn linear<T: Real>(xs: &[T], ys: &[T], x: T) -> T {
    let k = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let s = (x - x0) / (x1 - x0);
    ys[k - 1] + (ys[k] - ys[k - 1]) * s
}

/// `W(z)`, analytic off `[a, b]`.
///
/// The integrand's value at `x₀ = clamp(Re z, a, b)` is subtracted and
/// integrated in closed form; the remainder is integrated adaptively on
/// `[a, x₀]` and `[x₀, b]`.
pub fn outer_transfer<T: Real>(profile: &ModulusProfile<T>, z: C<T>) -> Result<C<T>> {
    outer_transfer_tol(profile, z, T::lit(1e-14))
}

/// [`outer_transfer`] with a given adaptive quadrature tolerance.
pub fn outer_transfer_tol<T: Real>(profile: &ModulusProfile<T>, z: C<T>, tol: T) -> Result<C<T>> {
    let (a, b) = (profile.a, profile.b);
    if z.im == T::zero() && z.re >= a && z.re <= b {
        return Err(Error::OnCut(format!("{z}")));
    }
    let sp = |t: T| profile.log_r(t) / T::PI();
    let x0 = z.re.max(a).min(b);
    let s0 = sp(x0);
    let quad = Adaptive::new(tol);
    let f = |t: T| C::new(sp(t) - s0, T::zero()) / (C::new(t, T::zero()) - z);
    let mut integral = quad.integrate_complex(f, a, x0) + quad.integrate_complex(f, x0, b);
    let re = |v: T| C::new(v, T::zero());
    integral += ((re(b) - z).ln() - (re(a) - z).ln()) * s0;
    Ok((integral * C::new(T::zero(), -T::one())).exp())
}

/// `exp(−(c i/π)·log((b − z)/(a − z)))` for `log R ≡ c` on `[a, b]`.
pub fn constant_outer<T: Real>(a: T, b: T, log_value: T, z: C<T>) -> C<T> {
    let re = |v: T| C::new(v, T::zero());
    let ln = (re(b) - z).ln() - (re(a) - z).ln();
    (ln * C::new(T::zero(), -log_value / T::PI())).exp()
}

/// `|W(z)| − |W(z)·(z − w)/(z − w̄)|`.
pub fn maximality_margin<T: Real>(profile: &ModulusProfile<T>, z: C<T>, w: C<T>) -> Result<T> {
    if !(z.im > T::zero() && w.im > T::zero()) {
        return Err(Error::arg("z and w must lie in the upper half-plane"));
    }
    let wz = outer_transfer(profile, z)?.norm();
    let blaschke = ((z - w) / (z - w.conj())).norm();
    Ok(wz - wz * blaschke)
}

/// `exp(−‖log R‖∞·(b − a)/(π·dist(z, [a, b])))`, a lower bound for `|W(z)|`.
pub fn zero_free_bound<T: Real>(profile: &ModulusProfile<T>, z: C<T>) -> T {
    (-(profile.log_bound * (profile.b - profile.a)) / (T::PI() * profile.dist(z))).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_modulus_gives_one() {
        let p = ModulusProfile::constant(0.0f64, 1.0, 0.0).unwrap();
        assert!((outer_transfer(&p, C::new(0.3, 0.2)).unwrap() - 1.0).norm() < 1e-15);
        let (z, w) = (C::new(0.2, 0.5), C::new(1.0, 2.0));
        let margin = maximality_margin(&p, z, w).unwrap();
        assert!((margin - (1.0 - ((z - w) / (z - w.conj())).norm())).abs() < 1e-15);
    }

    #[test]
    fn constant_modulus_closed_form() {
        let p = ModulusProfile::constant(0.0f64, 1.0, 1.0).unwrap();
        for z in [C::new(0.5, 1e-3), C::new(0.1, 0.4), C::new(2.0, -1.0), C::new(-3.0, 0.0)] {
            let want = (C::new(0.0, -1.0 / std::f64::consts::PI) * ((C::new(1.0, 0.0) - z) / (-z)).ln()).exp();
            assert!((outer_transfer(&p, z).unwrap() - want).norm() < 1e-12, "{z}");
            assert!((constant_outer(0.0, 1.0, 1.0, z) - want).norm() < 1e-14);
        }
        assert!(outer_transfer(&p, C::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn equal_points_give_full_margin() {
        let p = ModulusProfile::new(0.0f64, 1.0, |x| x * (1.0 - x), 0.25).unwrap();
        let z = C::new(0.4, 0.3);
        assert_eq!(maximality_margin(&p, z, z).unwrap(), outer_transfer(&p, z).unwrap().norm());
        assert!(maximality_margin(&p, z, C::new(0.4, -0.3)).is_err());
    }

    #[test]
    fn csv_validation() {
        let ok = "x,R\n0,1\n0.5,2\n1,1\n";
        let p = ModulusProfile::<f64>::from_reader(ok.as_bytes()).unwrap();
        assert!((p.r(0.25) - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(p.r(2.0), 1.0);
        let low = "x,R\n0,1\n0.5,0.9\n";
        assert_eq!(
            ModulusProfile::<f64>::from_reader(low.as_bytes()).unwrap_err(),
            Error::Csv { row: 2, msg: "R = 0.9 below 1".into() }
        );
        let unsorted = "x,R\n0,1\n0,2\n1,1\n";
        assert!(matches!(ModulusProfile::<f64>::from_reader(unsorted.as_bytes()), Err(Error::Csv { row: 2, .. })));
    }

    #[test]
    fn rejects_negative_log_modulus() {
        assert!(ModulusProfile::new(0.0f64, 1.0, |x| x - 0.5, 1.0).is_err());
    }
}
