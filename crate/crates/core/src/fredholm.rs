//! Nyström discretization of `S = I + K` and the dense operations on it.

use crate::error::{Error, Result};
use crate::kernels::{Kind, KernelProfile};
use crate::linalg::Matrix;
use crate::quadrature::{gauss_legendre, QuadratureRule};
use crate::scalar::{Real, C};

/// `S` sampled on a Gauss–Legendre grid.
#[derive(Clone, Debug)]
pub struct DiscretizedOperator<T> {
    pub rule: QuadratureRule<T>,
    /// `S[i][j] = δᵢⱼ + wⱼ·K(xᵢ, xⱼ)`.
    pub matrix: Matrix<T>,
    /// `I + D^{1/2}·K·D^{1/2}` with `D = diag(w)`.
    pub symmetrized: Matrix<T>,
    /// Right end used in place of infinity, for the semi-infinite kinds.
    pub truncation: Option<T>,
    pub profile: String,
}

impl<T: Real> DiscretizedOperator<T> {
    pub fn len(&self) -> usize {
        self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rule.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.rule.nodes
    }
}

/// Discretizes the profile's operator on `[left, right]` with `n` nodes.
pub fn discretize<T: Real>(profile: &KernelProfile<T>, left: T, right: T, n: usize) -> Result<DiscretizedOperator<T>> {
    if n < 2 {
        return Err(Error::arg(format!("need at least 2 nodes, got {n}")));
    }
    profile.check_domain(left)?;
    profile.check_domain(right)?;
    let rule = gauss_legendre(n, left, right)?;
    let x = &rule.nodes;
    let root: Vec<T> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut kernel = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let k = profile.operator_kernel(x[i], x[j])?;
            kernel[(i, j)] = k;
            kernel[(j, i)] = k;
        }
    }
    let matrix = Matrix::from_fn(n, n, |i, j| delta::<T>(i, j) + rule.weights[j] * kernel[(i, j)]);
    let symmetrized = Matrix::from_fn(n, n, |i, j| delta::<T>(i, j) + root[i] * kernel[(i, j)] * root[j]);
    let truncation = match profile.kind() {
        Kind::ZClass => None,
        _ => Some(right),
    };
    Ok(DiscretizedOperator { rule, matrix, symmetrized, truncation, profile: profile.name().to_string() })
}

/// Discretizes the operator on `[left, right]`, or on `[left, truncation]`
/// for the Airy and Gaussian kinds when `right` is `None`.
pub fn discretize_on<T: Real>(
    profile: &KernelProfile<T>,
    left: T,
    right: Option<T>,
    n: usize,
) -> Result<DiscretizedOperator<T>> {
    let right = match (right, profile.truncation(left)) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => return Err(Error::arg("a right end is required for Z-class profiles")),
    };
    discretize(profile, left, right, n)
}

/// Starts at 64 nodes and doubles until consecutive log-determinants agree
/// to `1e-10`, capped at 512. Returns the operator and whether it converged.
pub fn discretize_converged<T: Real>(
    profile: &KernelProfile<T>,
    left: T,
    right: T,
) -> Result<(DiscretizedOperator<T>, bool)> {
    let mut n = 64;
    let mut op = discretize(profile, left, right, n)?;
    let mut prev = log_det(&op)?;
    while n < 512 {
        n *= 2;
        let next = discretize(profile, left, right, n)?;
        let cur = log_det(&next)?;
        op = next;
        if (cur - prev).abs() <= T::lit(1e-10) {
            return Ok((op, true));
        }
        prev = cur;
    }
    Ok((op, false))
}

/// log det S via Cholesky of the symmetrized matrix.
pub fn log_det<T: Real>(op: &DiscretizedOperator<T>) -> Result<T> {
    let l = op.symmetrized.cholesky()?;
    Ok((0..op.len()).fold(T::zero(), |s, i| s + l[(i, i)].ln()) * T::lit(2.0))
}

/// Solves `h(xᵢ) + Σⱼ wⱼ K(xᵢ, xⱼ) h(xⱼ) = rhs(xᵢ)` for each column.
pub fn resolve<T: Real>(op: &DiscretizedOperator<T>, columns: &[Vec<C<T>>]) -> Result<Vec<Vec<C<T>>>> {
    let lu = op.matrix.lu()?;
    columns
        .iter()
        .map(|rhs| {
            if rhs.len() != op.len() {
                return Err(Error::arg(format!("rhs has {} entries, grid has {}", rhs.len(), op.len())));
            }
            let re: Vec<T> = rhs.iter().map(|c| c.re).collect();
            let im: Vec<T> = rhs.iter().map(|c| c.im).collect();
            let (hr, hi) = (lu.solve(&re), lu.solve(&im));
            Ok(hr.into_iter().zip(hi).map(|(r, i)| C::new(r, i)).collect())
        })
        .collect()
}

/// Applies the discretized `S` to a grid function.
pub fn apply<T: Real>(op: &DiscretizedOperator<T>, h: &[C<T>]) -> Vec<C<T>> {
    let re: Vec<T> = h.iter().map(|c| c.re).collect();
    let im: Vec<T> = h.iter().map(|c| c.im).collect();
    let (sr, si) = (op.matrix.matvec(&re), op.matrix.matvec(&im));
    sr.into_iter().zip(si).map(|(r, i)| C::new(r, i)).collect()
}

/// Largest |eigenvalue| of the kernel part `S̃ − I`.
pub fn operator_norm<T: Real>(op: &DiscretizedOperator<T>) -> Result<T> {
    let ev = op.symmetrized.symmetric_eigenvalues()?;
    Ok(ev.iter().fold(T::zero(), |m, &v| m.max((v - T::one()).abs())))
}

/// Lower factor `L` of `S̃ = L·Lᵀ`.
///
/// The leading `k×k` block of `L` depends only on the leading block of `S̃`,
/// i.e. on the operator restricted to `[a, xₖ]`.
pub fn lower_factor<T: Real>(op: &DiscretizedOperator<T>) -> Result<Matrix<T>> {
    op.symmetrized.cholesky()
}

/// `q(xᵢ) = (L⁻¹φ̃)ᵢ/√wᵢ` with `φ̃ᵢ = √wᵢ·φ(xᵢ)`; approximates
/// `(S_x⁻¹φ)(x)` evaluated at the right end of `[a, x]`.
pub fn q_function<T: Real>(op: &DiscretizedOperator<T>, profile: &KernelProfile<T>) -> Result<Vec<C<T>>> {
    let l = lower_factor(op)?;
    q_from_factor(op, profile, &l)
}

pub(crate) fn q_from_factor<T: Real>(
    op: &DiscretizedOperator<T>,
    profile: &KernelProfile<T>,
    l: &Matrix<T>,
) -> Result<Vec<C<T>>> {
    let root: Vec<T> = op.rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut re = Vec::with_capacity(op.len());
    let mut im = Vec::with_capacity(op.len());
    for (&x, &r) in op.nodes().iter().zip(&root) {
        let p = profile.phi(x)?;
        re.push(p.re * r);
        im.push(p.im * r);
    }
    let (yr, yi) = (l.solve_lower(&re), l.solve_lower(&im));
    Ok((0..op.len()).map(|i| C::new(yr[i], yi[i]) / root[i]).collect())
}

fn delta<T: Real>(i: usize, j: usize) -> T {
    if i == j {
        T::one()
    } else {
        T::zero()
    }
}
