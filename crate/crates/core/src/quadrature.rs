//! Gauss–Legendre rules and an adaptive panel integrator built on them.

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// An n-point rule on `[a, b]` with ascending nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub a: T,
    pub b: T,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    /// Same rule affinely moved to `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> Self {
        let s = (b - a) / (self.b - self.a);
        QuadratureRule {
            a,
            b,
            nodes: self.nodes.iter().map(|&x| a + (x - self.a) * s).collect(),
            weights: self.weights.iter().map(|&w| w * s).collect(),
        }
    }
}

/// n-point Gauss–Legendre rule mapped to `[a, b]`.
///
/// Nodes are found by Newton iteration on the three-term recurrence, starting
/// from the Tricomi approximation; weights are `2 / ((1 − t²) P′ₙ(t)²)`.
pub fn gauss_legendre<T: Real>(n: usize, a: T, b: T) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::arg("gauss_legendre: n must be positive"));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::arg("gauss_legendre: endpoints must be finite"));
    }
    if b <= a {
        return Err(Error::arg("gauss_legendre: need b > a"));
    }

    let nt = T::of(n);
    let half = T::lit(0.5);
    let eps = T::epsilon();
    let mut t = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];

    // Only the non-negative half is computed; the other half follows by symmetry.
    for i in 0..n.div_ceil(2) {
        let theta = T::PI() * (T::of(i) + T::lit(0.75)) / (nt + half);
        let mut x = theta.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= eps * T::lit(2.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let wi = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        // ascending order: the largest root goes last
        t[n - 1 - i] = x;
        t[i] = -x;
        w[n - 1 - i] = wi;
        w[i] = wi;
    }
    if n % 2 == 1 {
        t[n / 2] = T::zero();
    }

    let c = (b - a) * half;
    let m = (a + b) * half;
    Ok(QuadratureRule {
        a,
        b,
        nodes: t.iter().map(|&x| m + c * x).collect(),
        weights: w.iter().map(|&wi| wi * c).collect(),
    })
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kt = T::of(k);
        let p2 = ((T::lit(2.0) * kt - T::one()) * x * p1 - (kt - T::one()) * p0) / kt;
        p0 = p1;
        p1 = p2;
    }
    let (p, pm1) = if n == 1 { (x, T::one()) } else { (p1, p0) };
    let nt = T::of(n);
    (p, nt * (x * p - pm1) / (x * x - T::one()))
}

/// Adaptive integrator: bisects panels until a 10-point and a 20-point
/// Gauss–Legendre estimate agree to `tol` (absolute, scaled by panel share).
#[derive(Debug, Clone)]
pub struct Adaptive<T> {
    lo: QuadratureRule<T>,
    hi: QuadratureRule<T>,
    pub tol: T,
    pub max_depth: usize,
}

impl<T: Real> Adaptive<T> {
    pub fn new(tol: T) -> Self {
        Adaptive {
            lo: gauss_legendre(10, -T::one(), T::one()).expect("static rule"),
            hi: gauss_legendre(20, -T::one(), T::one()).expect("static rule"),
            tol,
            max_depth: 40,
        }
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        if a == b {
            return T::zero();
        }
        let mut total = T::zero();
        let width = (b - a).abs();
        let mut stack = vec![(a, b, 0usize)];
        while let Some((l, r, depth)) = stack.pop() {
            let coarse = Self::panel(&self.lo, &mut f, l, r);
            let fine = Self::panel(&self.hi, &mut f, l, r);
            let share = ((r - l).abs() / width).max(T::lit(1e-3));
            if (fine - coarse).abs() <= self.tol * share || depth >= self.max_depth {
                total += fine;
            } else {
                let m = (l + r) * T::lit(0.5);
                stack.push((m, r, depth + 1));
                stack.push((l, m, depth + 1));
            }
        }
        total
    }

    /// Complex-valued integrand; panels are refined on the larger of the two
    /// component discrepancies.
    pub fn integrate_complex<F: FnMut(T) -> C<T>>(&self, mut f: F, a: T, b: T) -> C<T> {
        let mut total = C::new(T::zero(), T::zero());
        if a == b {
            return total;
        }
        let width = (b - a).abs();
        let mut stack = vec![(a, b, 0usize)];
        while let Some((l, r, depth)) = stack.pop() {
            let coarse = Self::panel_complex(&self.lo, &mut f, l, r);
            let fine = Self::panel_complex(&self.hi, &mut f, l, r);
            let share = ((r - l).abs() / width).max(T::lit(1e-3));
            if (fine - coarse).norm() <= self.tol * share || depth >= self.max_depth {
                total += fine;
            } else {
                let m = (l + r) * T::lit(0.5);
                stack.push((m, r, depth + 1));
                stack.push((l, m, depth + 1));
            }
        }
        total
    }

    fn panel_complex<F: FnMut(T) -> C<T>>(rule: &QuadratureRule<T>, f: &mut F, l: T, r: T) -> C<T> {
        let c = (r - l) * T::lit(0.5);
        let m = (r + l) * T::lit(0.5);
        let mut s = C::new(T::zero(), T::zero());
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            s += f(m + c * t) * w;
        }
        s * c
    }

    fn panel<F: FnMut(T) -> T>(rule: &QuadratureRule<T>, f: &mut F, l: T, r: T) -> T {
        let c = (r - l) * T::lit(0.5);
        let m = (r + l) * T::lit(0.5);
        let mut s = T::zero();
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * f(m + c * t);
        }
        s * c
    }
}
