//! Small dense linear algebra: real row-major matrices and complex 2×2 blocks.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn asymmetry(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.rows {
            for j in 0..i {
                m = m.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        m
    }

    /// Leading `k×k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)])
    }

    /// Lower Cholesky factor `L` with `self = L·Lᵀ`.
    ///
    /// Only the lower triangle of `self` is read.
    pub fn cholesky(&self) -> Result<Self> {
        self.square()?;
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > T::zero()) {
                return Err(Error::NotPositive { pivot: j });
            }
            let djj = d.sqrt();
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(l)
    }

    /// Solves `self·x = b` for lower-triangular `self`.
    pub fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let n = self.rows;
        let mut x = b.to_vec();
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self[(i, k)] * x[k];
            }
            x[i] = s / self[(i, i)];
        }
        x
    }

    /// Solves `selfᵀ·x = b` for lower-triangular `self`.
    pub fn solve_lower_transposed(&self, b: &[T]) -> Vec<T> {
        let n = self.rows;
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self[(k, i)] * x[k];
            }
            x[i] = s / self[(i, i)];
        }
        x
    }

    pub fn lu(&self) -> Result<Lu<T>> {
        Lu::new(self)
    }

    /// Eigenvalues of a symmetric matrix, ascending.
    ///
    /// Householder reduction to tridiagonal form followed by implicit QL.
    pub fn symmetric_eigenvalues(&self) -> Result<Vec<T>> {
        self.square()?;
        let (mut d, mut e) = tridiagonalize(self);
        tridiagonal_ql(&mut d, &mut e)?;
        d.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Ok(d)
    }

    fn square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::arg(format!("matrix is {}x{}, expected square", self.rows, self.cols)));
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    fn new(a: &Matrix<T>) -> Result<Self> {
        a.square()?;
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs().max(T::min_positive_value());
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if lu[(i, k)].abs() > lu[(p, k)].abs() {
                    p = i;
                }
            }
            if lu[(p, k)].abs() <= T::epsilon() * scale {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != T::zero() {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= f * u;
                    }
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.perm.len();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let v = x[k];
                x[i] -= self.lu[(i, k)] * v;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let v = x[k];
                x[i] -= self.lu[(i, k)] * v;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

fn tridiagonalize<T: Real>(a: &Matrix<T>) -> (Vec<T>, Vec<T>) {
    let n = a.rows;
    let mut m = a.clone();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let scale = (0..=l).fold(T::zero(), |s, k| s + m[(i, k)].abs());
            if scale == T::zero() {
                e[i] = m[(i, l)];
            } else {
                for k in 0..=l {
                    m[(i, k)] /= scale;
                    h += m[(i, k)] * m[(i, k)];
                }
                let f = m[(i, l)];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                m[(i, l)] = f - g;
                let mut ff = T::zero();
                for j in 0..=l {
                    m[(j, i)] = m[(i, j)] / h;
                    let mut g = T::zero();
                    for k in 0..=j {
                        g += m[(j, k)] * m[(i, k)];
                    }
                    for k in j + 1..=l {
                        g += m[(k, j)] * m[(i, k)];
                    }
                    e[j] = g / h;
                    ff += e[j] * m[(i, j)];
                }
                let hh = ff / (h + h);
                for j in 0..=l {
                    let f = m[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let v = f * e[k] + g * m[(i, k)];
                        m[(j, k)] -= v;
                    }
                }
            }
        } else {
            e[i] = m[(i, l)];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = m[(i, i)];
    }
    (d, e)
}

fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::arg("tridiagonal QL did not converge"));
            }
            let two = T::lit(2.0);
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// Complex 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T> {
    pub m: [[C<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = C::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let (z, o) = (C::new(T::zero(), T::zero()), C::new(T::one(), T::zero()));
        Self::new(o, z, z, o)
    }

    /// `J = diag(−1, 1)`.
    pub fn j() -> Self {
        let (z, o) = (C::new(T::zero(), T::zero()), C::new(T::one(), T::zero()));
        Self::new(-o, z, z, o)
    }

    pub fn scale(self, s: C<T>) -> Self {
        Mat2 { m: [[self.m[0][0] * s, self.m[0][1] * s], [self.m[1][0] * s, self.m[1][1] * s]] }
    }

    pub fn scale_re(self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    /// Conjugate transpose.
    pub fn adjoint(self) -> Self {
        let m = self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn det(self) -> C<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(self) -> C<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inverse(self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= T::epsilon() * self.max_abs() * self.max_abs() || !det.norm().is_finite() {
            return Err(Error::Singular { pivot: 0 });
        }
        let m = self.m;
        Ok(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(det.inv()))
    }

    pub fn max_abs(self) -> T {
        self.m.iter().flatten().fold(T::zero(), |a, v| a.max(v.norm()))
    }

    pub fn is_finite(self) -> bool {
        self.m.iter().flatten().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(self) -> (T, T) {
        let h = (self + self.adjoint()).scale_re(T::lit(0.5));
        let a = h.m[0][0].re;
        let d = h.m[1][1].re;
        let b = h.m[0][1].norm();
        let half = T::lit(0.5);
        let mid = (a + d) * half;
        let rad = ((a - d) * half).hypot(b);
        (mid - rad, mid + rad)
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}

/// Outer product `u·v*` of two complex 2-vectors.
pub fn outer<T: Real>(u: [C<T>; 2], v: [C<T>; 2]) -> Mat2<T> {
    Mat2::new(u[0] * v[0].conj(), u[0] * v[1].conj(), u[1] * v[0].conj(), u[1] * v[1].conj())
}

/// `u*·M·v` for complex 2-vectors.
pub fn sandwich<T: Real>(u: [C<T>; 2], m: Mat2<T>, v: [C<T>; 2]) -> C<T> {
    let mv = [m.m[0][0] * v[0] + m.m[0][1] * v[1], m.m[1][0] * v[0] + m.m[1][1] * v[1]];
    u[0].conj() * mv[0] + u[1].conj() * mv[1]
}
