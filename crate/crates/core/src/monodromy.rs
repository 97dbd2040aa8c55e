//! Transfer matrix `W(x, z)` of the canonical system as a product integral.
//!
//! Each step contributes `I + iJσ₁′(m)·h/(z − m)`; since `(Jσ₁′)² = 0` this
//! is the exact exponential of the step, so `det W = 1` and
//! `W(z̄)*·J·W(z) = J` hold factor by factor. Later `x` multiply on the left.

use crate::error::{Error, Result};
use crate::kernels::zclass_jmodule;
use crate::linalg::Mat2;
use crate::scalar::{Real, C};
use crate::spectral::{density_matrix, CholeskyDensity};

/// A density `t ↦ σ₁′(t)` that can be sampled anywhere on its interval.
pub trait Density<T: Real> {
    fn at(&self, t: T) -> Mat2<T>;
}

impl<T: Real> Density<T> for CholeskyDensity<T> {
    fn at(&self, t: T) -> Mat2<T> {
        density_matrix(self.q_at(t))
    }
}

/// Constant density.
#[derive(Clone, Copy, Debug)]
pub struct ConstantDensity<T>(pub Mat2<T>);

impl<T: Real> Density<T> for ConstantDensity<T> {
    fn at(&self, _: T) -> Mat2<T> {
        self.0
    }
}

impl<T: Real, F: Fn(T) -> Mat2<T>> Density<T> for F {
    fn at(&self, t: T) -> Mat2<T> {
        self(t)
    }
}

/// `W` at one spectral point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferMatrix2<T> {
    pub z: C<T>,
    pub w: Mat2<T>,
    pub steps: usize,
    pub a: T,
    pub b: T,
}

impl<T: Real> TransferMatrix2<T> {
    pub fn det_residual(&self) -> T {
        (self.w.det() - C::new(T::one(), T::zero())).norm()
    }
}

/// Minimum distance from `z` to the cut below which evaluation is refused.
pub const EPS_MIN: f64 = 1e-6;

/// Midpoint product integral over `[a, b]` with `steps` equal steps.
pub fn transfer<T: Real, D: Density<T> + ?Sized>(density: &D, a: T, b: T, z: C<T>, steps: usize) -> Result<TransferMatrix2<T>> {
    check_interval(a, b)?;
    if steps == 0 {
        return Err(Error::arg("transfer needs at least one step"));
    }
    check_off_cut(a, b, z)?;
    let w = product(density, &[(a, b, steps)], z);
    Ok(TransferMatrix2 { z, w, steps, a, b })
}

fn product<T: Real, D: Density<T> + ?Sized>(density: &D, panels: &[(T, T, usize)], z: C<T>) -> Mat2<T> {
    product_many(density, panels, &[z])[0]
}

/// One pass over the grid for several spectral points; each density sample
/// is shared by all of them.
fn product_many<T: Real, D: Density<T> + ?Sized>(density: &D, panels: &[(T, T, usize)], zs: &[C<T>]) -> Vec<Mat2<T>> {
    let j = Mat2::j();
    let iu = C::new(T::zero(), T::one());
    let mut ws = vec![Mat2::identity(); zs.len()];
    for &(l, r, steps) in panels {
        let h = (r - l) / T::of(steps);
        for k in 0..steps {
            let m = l + h * (T::of(k) + T::lit(0.5));
            let jd = j * density.at(m);
            for (w, &z) in ws.iter_mut().zip(zs) {
                let factor = Mat2::identity() + jd.scale(iu * h / (z - m));
                *w = factor * *w;
            }
        }
    }
    ws
}

/// `W(x + iε)` and `W(x − iε)`.
///
/// Uses at least `⌈200/ε⌉` steps over the interval and ten times finer steps
/// within `10ε` of `x`.
pub fn boundary_pair<T: Real, D: Density<T> + ?Sized>(
    density: &D,
    a: T,
    b: T,
    x: T,
    eps: T,
    steps: usize,
) -> Result<(Mat2<T>, Mat2<T>)> {
    check_interval(a, b)?;
    if !(x > a && x < b) {
        return Err(Error::OutOfDomain { value: x.as_f64(), lo: a.as_f64(), hi: b.as_f64() });
    }
    if !(eps >= T::lit(1e-4) && eps <= T::lit(1e-1)) {
        return Err(Error::OutOfDomain { value: eps.as_f64(), lo: 1e-4, hi: 1e-1 });
    }
    let base = (T::lit(200.0) / eps).ceil().to_usize().unwrap_or(usize::MAX).max(steps);
    let h = (b - a) / T::of(base);
    let ten = T::lit(10.0);
    let lo = a.max(x - ten * eps);
    let hi = b.min(x + ten * eps);
    let count = |l: T, r: T, step: T| ((r - l) / step).ceil().to_usize().unwrap_or(1).max(1);
    let panels = [(a, lo, count(a, lo, h)), (lo, hi, count(lo, hi, h / ten)), (hi, b, count(hi, b, h))];
    let panels: Vec<_> = panels.into_iter().filter(|p| p.1 > p.0).collect();
    let w = product_many(density, &panels, &[C::new(x, eps), C::new(x, -eps)]);
    Ok((w[0], w[1]))
}

/// `‖W₊ − W₋·R²‖_max`.
pub fn jump_residual<T: Real>(wplus: Mat2<T>, wminus: Mat2<T>, rsq: Mat2<T>) -> Result<T> {
    wminus.inverse()?;
    Ok((wplus - wminus * rsq).max_abs())
}

/// Jump residual at `x` with `R²` built from `ψ(x)`.
pub fn jump_residual_at<T: Real, D: Density<T> + ?Sized>(
    density: &D,
    psi: C<T>,
    a: T,
    b: T,
    x: T,
    eps: T,
    steps: usize,
) -> Result<T> {
    let (up, down) = boundary_pair(density, a, b, x, eps, steps)?;
    jump_residual(up, down, zclass_jmodule(psi)?.rsq)
}

/// `‖W_[a,b] − W_[c,b]·W_[a,c]‖_max`; steps are shared out in proportion to length.
pub fn split_residual<T: Real, D: Density<T> + ?Sized>(density: &D, a: T, c: T, b: T, z: C<T>, steps: usize) -> Result<T> {
    if !(a < c && c < b) {
        return Err(Error::arg("split needs a < c < b"));
    }
    let left = ((c - a) / (b - a) * T::of(steps)).round().to_usize().unwrap_or(1).max(1);
    let right = steps.saturating_sub(left).max(1);
    let whole = transfer(density, a, b, z, steps)?.w;
    let first = transfer(density, a, c, z, left)?.w;
    let second = transfer(density, c, b, z, right)?.w;
    Ok((whole - second * first).max_abs())
}

/// `‖W(z̄)*·J·W(z) − J‖_max`.
pub fn j_unitarity_residual<T: Real, D: Density<T> + ?Sized>(density: &D, a: T, b: T, z: C<T>, steps: usize) -> Result<T> {
    let w = transfer(density, a, b, z, steps)?.w;
    let wc = transfer(density, a, b, z.conj(), steps)?.w;
    Ok((wc.adjoint() * Mat2::j() * w - Mat2::j()).max_abs())
}

/// `‖z(W(z) − I) − M‖_max` at `z = iρ` for each radius, with `M = iJσ₁`.
pub fn asymptotic_residual<T: Real, D: Density<T> + ?Sized>(
    density: &D,
    a: T,
    b: T,
    sigma1_total: Mat2<T>,
    radii: &[T],
    steps: usize,
) -> Result<Vec<T>> {
    let m = crate::spectral::m_matrix(sigma1_total);
    radii
        .iter()
        .map(|&rho| {
            if !(rho >= T::lit(10.0) * (b - a)) {
                return Err(Error::arg(format!("radius {rho} below 10·(b − a)")));
            }
            let z = C::new(T::zero(), rho);
            let w = transfer(density, a, b, z, steps)?.w;
            Ok(((w - Mat2::identity()).scale(z) - m).max_abs())
        })
        .collect()
}

/// `I + iJC·log((a − z)/(b − z))`, the transfer matrix of a constant
/// nilpotent-direction density `C`.
pub fn constant_density_transfer<T: Real>(c: Mat2<T>, a: T, b: T, z: C<T>) -> Mat2<T> {
    let ln = (C::new(a, T::zero()) - z).ln() - (C::new(b, T::zero()) - z).ln();
    Mat2::identity() + (Mat2::j() * c).scale(C::new(T::zero(), T::one()) * ln)
}

fn check_interval<T: Real>(a: T, b: T) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::arg("interval must satisfy a < b, both finite"));
    }
    Ok(())
}

fn check_off_cut<T: Real>(a: T, b: T, z: C<T>) -> Result<()> {
    let dx = if z.re < a {
        a - z.re
    } else if z.re > b {
        z.re - b
    } else {
        T::zero()
    };
    if dx.hypot(z.im) < T::lit(EPS_MIN) {
        return Err(Error::OnCut(format!("{z}")));
    }
    Ok(())
}
