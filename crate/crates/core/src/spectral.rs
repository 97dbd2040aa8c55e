//! Spectral function σ₁(ζ), its density by two routes, and `M = iJσ₁`.

use crate::error::{Error, Result};
use crate::fredholm::{discretize, log_det, lower_factor, q_from_factor, resolve, DiscretizedOperator};
use crate::kernels::{f1_vector, Kind, KernelProfile, ProfileKind};
use crate::linalg::Mat2;
use crate::quadrature::QuadratureRule;
use crate::scalar::{Real, C};

/// σ₁ sampled over a ζ-grid, with `M = iJσ₁`.
#[derive(Clone, Debug)]
pub struct SpectralData<T> {
    pub zeta_grid: Vec<T>,
    pub sigma1: Vec<Mat2<T>>,
    pub m: Vec<Mat2<T>>,
}

/// σ₁(ζ) from the resolvent on `[a, ζ]` with `n` nodes.
pub fn sigma1_at<T: Real>(profile: &KernelProfile<T>, a: T, zeta: T, n: usize) -> Result<Mat2<T>> {
    let op = discretize(profile, a, zeta, n)?;
    let (sigma, _) = sigma1_from(&op, profile)?;
    Ok(sigma)
}

/// σ₁ together with `Φ₁ = S⁻¹φ` at the nodes.
fn sigma1_from<T: Real>(op: &DiscretizedOperator<T>, profile: &KernelProfile<T>) -> Result<(Mat2<T>, Vec<C<T>>)> {
    let phis = op.nodes().iter().map(|&x| profile.phi(x)).collect::<Result<Vec<_>>>()?;
    let big_phi = resolve(op, std::slice::from_ref(&phis))?.remove(0);
    let mut s = Mat2::zero();
    for ((&w, p), f) in op.rule.weights.iter().zip(&phis).zip(&big_phi) {
        let pf = *p * *f;
        let block = Mat2::new(*p * f.conj(), -pf, -pf.conj(), p.conj() * *f);
        s = s + block.scale_re(w);
    }
    Ok((s.scale_re((T::TAU()).recip()), big_phi))
}

/// σ₁ and `M` at every point of `zeta_grid`; each point has its own operator.
pub fn sigma1_on_grid<T: Real>(profile: &KernelProfile<T>, a: T, zeta_grid: &[T], n: usize) -> Result<SpectralData<T>> {
    check_grid(a, zeta_grid, 1)?;
    let sigma1 = zeta_grid.iter().map(|&z| sigma1_at(profile, a, z, n)).collect::<Result<Vec<_>>>()?;
    let m = sigma1.iter().map(|&s| m_matrix(s)).collect();
    Ok(SpectralData { zeta_grid: zeta_grid.to_vec(), sigma1, m })
}

/// `M = iJσ₁`.
pub fn m_matrix<T: Real>(sigma1: Mat2<T>) -> Mat2<T> {
    (Mat2::j() * sigma1).scale(C::new(T::zero(), T::one()))
}

/// `(1/2π)·[[|q|², −q²], [−q̄², |q|²]]`.
pub fn density_matrix<T: Real>(q: C<T>) -> Mat2<T> {
    let n = C::new(q.norm_sqr(), T::zero());
    let sq = q * q;
    Mat2::new(n, -sq, -sq.conj(), n).scale_re(T::TAU().recip())
}

/// Density σ₁′ given by `q` at Gauss–Legendre nodes, evaluated anywhere in
/// `[a, b]` by barycentric interpolation of `q`.
#[derive(Clone, Debug)]
pub struct CholeskyDensity<T> {
    pub rule: QuadratureRule<T>,
    pub q: Vec<C<T>>,
    bary: Vec<T>,
}

impl<T: Real> CholeskyDensity<T> {
    pub fn from_q(rule: QuadratureRule<T>, q: Vec<C<T>>) -> Result<Self> {
        if rule.len() != q.len() || rule.is_empty() {
            return Err(Error::arg("density needs one q value per node"));
        }
        // barycentric weights for Gauss–Legendre nodes: (−1)^j·√((1−tⱼ²)·wⱼ)
        let half = (rule.b - rule.a) * T::lit(0.5);
        let mid = (rule.a + rule.b) * T::lit(0.5);
        let bary = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .enumerate()
            .map(|(j, (&x, &w))| {
                let t = (x - mid) / half;
                let v = ((T::one() - t * t) * w / half).sqrt();
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        Ok(CholeskyDensity { rule, q, bary })
    }

    pub fn at_node(&self, i: usize) -> Mat2<T> {
        density_matrix(self.q[i])
    }

    pub fn values(&self) -> Vec<Mat2<T>> {
        self.q.iter().map(|&q| density_matrix(q)).collect()
    }

    /// Interpolated `q(x)`.
    pub fn q_at(&self, x: T) -> C<T> {
        let mut num = C::new(T::zero(), T::zero());
        let mut den = T::zero();
        for ((&xj, &qj), &bj) in self.rule.nodes.iter().zip(&self.q).zip(&self.bary) {
            let d = x - xj;
            if d == T::zero() {
                return qj;
            }
            let c = bj / d;
            num += qj * c;
            den += c;
        }
        num / den
    }

    /// `∫ σ₁′` over the whole interval by the underlying rule.
    pub fn total(&self) -> Mat2<T> {
        self.q
            .iter()
            .zip(&self.rule.weights)
            .fold(Mat2::zero(), |acc, (&q, &w)| acc + density_matrix(q).scale_re(w))
    }

    /// Trapezoid partial integrals of σ₁′ over `[a, xᵢ]` on the node grid,
    /// with the density at `a` taken from the profile (there `q(a) = φ(a)`).
    pub fn cumulative(&self, at_a: Mat2<T>) -> Vec<Mat2<T>> {
        let mut acc = Mat2::zero();
        let mut prev_x = self.rule.a;
        let mut prev_v = at_a;
        let half = T::lit(0.5);
        self.rule
            .nodes
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let v = self.at_node(i);
                acc = acc + (prev_v + v).scale_re((x - prev_x) * half);
                prev_x = x;
                prev_v = v;
                acc
            })
            .collect()
    }
}

/// σ₁′ by the triangular-factor route on `[a, b]` with `n` nodes.
pub fn sigma1_density<T: Real>(profile: &KernelProfile<T>, a: T, b: T, n: usize) -> Result<CholeskyDensity<T>> {
    if profile.kind() != Kind::ZClass {
        return Err(Error::WrongKind(profile_kind_name(profile)));
    }
    let op = discretize(profile, a, b, n)?;
    let l = lower_factor(&op)?;
    let q = q_from_factor(&op, profile, &l)?;
    CholeskyDensity::from_q(op.rule, q)
}

/// σ₁′ at each grid point by differentiating `ζ ↦ σ₁(ζ)` (three-point
/// formulas, one-sided at the ends; the grid may be non-uniform).
pub fn density_fd<T: Real>(profile: &KernelProfile<T>, a: T, zeta_grid: &[T], n: usize) -> Result<Vec<Mat2<T>>> {
    check_grid(a, zeta_grid, 3)?;
    let s = sigma1_on_grid(profile, a, zeta_grid, n)?.sigma1;
    Ok(three_point_derivative(zeta_grid, &s))
}

fn three_point_derivative<T: Real>(x: &[T], f: &[Mat2<T>]) -> Vec<Mat2<T>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let (j0, j1, j2) = match i {
                0 => (0, 1, 2),
                _ if i == n - 1 => (n - 3, n - 2, n - 1),
                _ => (i - 1, i, i + 1),
            };
            let (x0, x1, x2) = (x[j0], x[j1], x[j2]);
            let t = x[i];
            // derivative of the Lagrange basis through three points
            let c0 = ((t - x1) + (t - x2)) / ((x0 - x1) * (x0 - x2));
            let c1 = ((t - x0) + (t - x2)) / ((x1 - x0) * (x1 - x2));
            let c2 = ((t - x0) + (t - x1)) / ((x2 - x0) * (x2 - x1));
            f[j0].scale_re(c0) + f[j1].scale_re(c1) + f[j2].scale_re(c2)
        })
        .collect()
}

/// One row of the log-determinant identity table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DizRow<T> {
    pub zeta: T,
    /// Central difference of `log det S_ζ`.
    pub lhs: T,
    /// `−tr σ₁(ζ)/ζ`, i.e. `−(1/(2πζ))·Σ wᵢ·2Re(φ̄Φ₁)`.
    pub rhs: T,
    pub residual: T,
}

/// Compares `d/dζ log det S_ζ` with `−tr σ₁(ζ)/ζ` for the sine kernel on `(0, ζ)`.
///
/// The difference step is the grid spacing; both neighbours `ζ ± h` are
/// computed directly, so the first grid point must exceed the spacing.
pub fn diz_residual<T: Real>(gamma: T, zeta_grid: &[T], n: usize) -> Result<Vec<DizRow<T>>> {
    let profile = crate::kernels::builtin_profile(ProfileKind::Sine, crate::kernels::Params { gamma, alpha: T::zero() })?;
    check_grid(T::zero(), zeta_grid, 5)?;
    let h = zeta_grid[1] - zeta_grid[0];
    if !(zeta_grid[0] - h > T::zero()) {
        return Err(Error::arg("diz: first grid point must exceed the grid step"));
    }
    zeta_grid
        .iter()
        .map(|&zeta| {
            let up = log_det(&discretize(&profile, T::zero(), zeta + h, n)?)?;
            let down = log_det(&discretize(&profile, T::zero(), zeta - h, n)?)?;
            let lhs = (up - down) / (h + h);
            let (sigma, _) = sigma1_from(&discretize(&profile, T::zero(), zeta, n)?, &profile)?;
            let rhs = -sigma.trace().re / zeta;
            Ok(DizRow { zeta, lhs, rhs, residual: (lhs - rhs).abs() })
        })
        .collect()
}

/// `β = (1/√(2π))·[q̄, −q]`, a 1×2 row with `β*β = σ₁′`.
pub fn beta_row<T: Real>(q: C<T>) -> [C<T>; 2] {
    let s = T::TAU().sqrt().recip();
    [q.conj() * s, -q * s]
}

/// σ₁′ at `a`, where the factor is trivial and `q = φ`.
pub fn density_at_start<T: Real>(profile: &KernelProfile<T>, a: T) -> Result<Mat2<T>> {
    let f = f1_vector(profile, a)?;
    Ok(density_matrix(f[0]))
}

fn check_grid<T: Real>(a: T, grid: &[T], min: usize) -> Result<()> {
    if grid.len() < min {
        return Err(Error::arg(format!("zeta grid needs at least {min} points")));
    }
    if !(grid[0] > a) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::arg("zeta grid must be strictly ascending and start after a"));
    }
    Ok(())
}

fn profile_kind_name<T: Real>(profile: &KernelProfile<T>) -> &'static str {
    match profile.kind() {
        Kind::ZClass => "zclass",
        Kind::Airy => "airy",
        Kind::Gaussian => "gaussian",
    }
}
