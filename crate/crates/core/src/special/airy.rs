//! Airy function Ai and its derivative on the real line.
//!
//! Regions: Maclaurin series on |x| ≤ 2, large-|x| asymptotic expansions for
//! |x| ≥ 8, and Taylor stepping of `y″ = x·y` in between. On the positive side
//! the stepping runs downward from x = 8, where Ai is the dominant solution, so
//! no Bi contamination builds up; on the negative side both solutions
//! oscillate and stepping outward from −2 is stable.

use crate::scalar::Real;

const AI0: f64 = 0.355_028_053_887_817_239_260_063_186_004_183_2;
const AIP0: f64 = -0.258_819_403_792_806_8;
const SERIES_EDGE: f64 = 2.0;
const ASYMPTOTIC_EDGE: f64 = 8.0;
const MAX_STEP: f64 = 0.5;

/// Returns `(Ai(x), Ai′(x))`.
pub fn airy<T: Real>(x: T) -> (T, T) {
    let series = T::lit(SERIES_EDGE);
    let asym = T::lit(ASYMPTOTIC_EDGE);
    if x.is_nan() {
        return (x, x);
    }
    if x.abs() <= series {
        maclaurin(x)
    } else if x >= asym {
        asymptotic_positive(x)
    } else if x <= -asym {
        asymptotic_negative(-x)
    } else if x > T::zero() {
        let (y, dy) = asymptotic_positive(asym);
        taylor_walk(asym, y, dy, x)
    } else {
        let (y, dy) = maclaurin(-series);
        taylor_walk(-series, y, dy, x)
    }
}

/// Ai(x) alone.
pub fn airy_ai<T: Real>(x: T) -> T {
    airy(x).0
}

fn maclaurin<T: Real>(x: T) -> (T, T) {
    let x3 = x * x * x;
    let eps = T::epsilon() * T::lit(0.1);
    // f = Σ a_k x^{3k}, g = Σ c_k x^{3k+1}
    let (mut f, mut g) = (T::one(), x);
    let (mut fp, mut gp) = (T::zero(), T::one());
    let (mut tf, mut tg) = (T::one(), x);
    let (mut tfp, mut tgp) = (x * x * T::lit(0.5), T::one());
    fp += tfp;
    for k in 1..200usize {
        let k3 = T::of(3 * k);
        tf *= x3 / ((k3 - T::one()) * k3);
        tg *= x3 / (k3 * (k3 + T::one()));
        tgp *= x3 / (k3 * (k3 - T::lit(2.0)));
        if k >= 2 {
            tfp *= x3 / ((k3 - T::one()) * (k3 - T::lit(3.0)));
            fp += tfp;
        }
        f += tf;
        g += tg;
        gp += tgp;
        let small = tf.abs() <= eps * f.abs()
            && tg.abs() <= eps * g.abs().max(T::min_positive_value())
            && tgp.abs() <= eps * gp.abs()
            && tfp.abs() <= eps * fp.abs().max(T::min_positive_value());
        if small {
            break;
        }
    }
    let c1 = T::lit(AI0);
    let c2 = -T::lit(AIP0);
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// Coefficients u_k of the Airy asymptotic series, generated until they stop
/// being useful for the given ζ.
fn u_coefficients<T: Real>(zeta: T, max_terms: usize) -> Vec<T> {
    let mut u = vec![T::one()];
    let mut prev_term = T::one();
    for k in 1..max_terms {
        let kf = T::of(k);
        let six_k = T::lit(6.0) * kf;
        let next = u[k - 1] * (six_k - T::one()) * (six_k - T::lit(3.0)) * (six_k - T::lit(5.0))
            / (T::lit(216.0) * kf * (T::lit(2.0) * kf - T::one()));
        let term = next / zeta.powi(k as i32);
        if term.abs() > prev_term.abs() {
            break;
        }
        u.push(next);
        prev_term = term;
        if term.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    u
}

fn v_from_u<T: Real>(u: &[T]) -> Vec<T> {
    u.iter()
        .enumerate()
        .map(|(k, &uk)| {
            if k == 0 {
                T::one()
            } else {
                let s = T::lit(6.0) * T::of(k);
                -(s + T::one()) / (s - T::one()) * uk
            }
        })
        .collect()
}

fn asymptotic_positive<T: Real>(x: T) -> (T, T) {
    let zeta = T::lit(2.0 / 3.0) * x * x.sqrt();
    let u = u_coefficients(zeta, 60);
    let v = v_from_u(&u);
    let mut su = T::zero();
    let mut sv = T::zero();
    let mut p = T::one();
    let inv = zeta.recip();
    for k in 0..u.len() {
        su += p * u[k];
        sv += p * v[k];
        p *= -inv;
    }
    let pref = (-zeta).exp() / (T::lit(2.0) * T::PI().sqrt());
    let q = x.sqrt().sqrt();
    (pref / q * su, -pref * q * sv)
}

fn asymptotic_negative<T: Real>(y: T) -> (T, T) {
    let zeta = T::lit(2.0 / 3.0) * y * y.sqrt();
    let u = u_coefficients(zeta, 80);
    let v = v_from_u(&u);
    let inv = zeta.recip();
    // even/odd split with alternating signs (−1)^k on k = index/2
    let (mut ue, mut uo, mut ve, mut vo) = (T::zero(), T::zero(), T::zero(), T::zero());
    let mut p = T::one();
    for k in 0..u.len() {
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            ue += sign * u[k] * p;
            ve += sign * v[k] * p;
        } else {
            uo += sign * u[k] * p;
            vo += sign * v[k] * p;
        }
        p *= inv;
    }
    let phase = zeta - T::FRAC_PI_4();
    let (s, c) = phase.sin_cos();
    let q = y.sqrt().sqrt();
    let rsp = T::PI().sqrt().recip();
    let ai = rsp / q * (c * ue + s * uo);
    let aip = rsp * q * (s * ve - c * vo);
    (ai, aip)
}

/// Integrates `y″ = x·y` from `x0` to `x1` by local Taylor expansions.
fn taylor_walk<T: Real>(x0: T, mut y: T, mut dy: T, x1: T) -> (T, T) {
    let span = x1 - x0;
    let nsteps = (span.abs() / T::lit(MAX_STEP)).ceil().max(T::one());
    let n = nsteps.to_usize().unwrap_or(1);
    let h = span / nsteps;
    let mut x = x0;
    for _ in 0..n {
        let (ny, ndy) = taylor_step(x, y, dy, h);
        y = ny;
        dy = ndy;
        x += h;
    }
    (y, dy)
}

fn taylor_step<T: Real>(x0: T, y0: T, y1: T, h: T) -> (T, T) {
    // a_{k+2} = (x0·a_k + a_{k−1}) / ((k+2)(k+1))
    let mut a = Vec::with_capacity(64);
    a.push(y0);
    a.push(y1);
    a.push(x0 * y0 * T::lit(0.5));
    let mut y = y0 + y1 * h + a[2] * h * h;
    let mut dy = y1 + T::lit(2.0) * a[2] * h;
    let mut hp = h * h;
    let scale = y0.abs() + y1.abs() * h.abs();
    let mut quiet = 0;
    for k in 1..200usize {
        let next = (x0 * a[k] + a[k - 1]) / T::of((k + 2) * (k + 1));
        a.push(next);
        let dterm = T::of(k + 2) * next * hp;
        hp *= h;
        let term = next * hp;
        y += term;
        dy += dterm;
        let tiny = T::epsilon() * T::lit(1e-2) * scale.max(y.abs());
        if term.abs() <= tiny && dterm.abs() * h.abs() <= tiny {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (y, dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath.airyai(x), mpmath.airyai(x, 1)
    const REFERENCE: [(f64, f64, f64); 15] = [
        (-10.0, 0.040_241_238_486_443_19, 0.996_265_044_132_79),
        (-8.0, -0.052_705_050_356_386_2, 0.935_560_938_198_306_6),
        (-5.0, 0.350_761_009_024_114_3, 0.327_192_818_554_443_1),
        (-2.0, 0.227_407_428_201_685_6, 0.618_259_020_741_691),
        (-1.0, 0.535_560_883_292_352_1, -0.010_160_567_116_645_21),
        (0.0, 0.355_028_053_887_817_2, -0.258_819_403_792_806_8),
        (0.5, 0.231_693_606_480_833_5, -0.224_910_532_664_683_9),
        (1.0, 0.135_292_416_312_881_4, -0.159_147_441_296_793_2),
        (2.0, 0.034_924_130_423_274_38, -0.053_090_384_433_653_63),
        (3.0, 0.006_591_139_357_460_719, -0.011_912_976_705_951_32),
        (5.0, 0.000_108_344_428_136_074_4, -0.000_247_413_890_868_462_5),
        (8.0, 4.692_207_616_099_232e-8, -1.341_439_297_906_786_6e-7),
        (10.0, 1.104_753_255_289_868_6e-10, -3.520_633_676_738_923_6e-10),
        (15.0, 2.164_962_520_737_992e-18, -8.420_567_954_017_773e-18),
        (20.0, 1.691_672_868_670_540_3e-27, -7.586_391_625_748_355e-27),
    ];

    #[test]
    fn matches_reference_table() {
        for &(x, ai, aip) in REFERENCE.iter() {
            let (a, d) = airy(x);
            assert!((a - ai).abs() <= 1e-12, "Ai({x}) = {a}, want {ai}");
            assert!((d - aip).abs() <= 1e-12, "Ai'({x}) = {d}, want {aip}");
            if x > 0.0 {
                assert!(((a - ai) / ai).abs() < 1e-11, "relative Ai({x})");
            }
        }
    }

    #[test]
    fn closed_form_at_origin() {
        let (a, d) = airy(0.0f64);
        assert!((a - 0.355028053887817).abs() < 1e-15);
        assert!((d + 0.258819403792807).abs() < 1e-15);
    }

    #[test]
    fn region_boundaries_agree() {
        for &edge in &[-8.0f64, -2.0, 2.0, 8.0] {
            let (a0, d0) = airy(edge - 1e-9);
            let (a1, d1) = airy(edge + 1e-9);
            let step = 2e-9;
            assert!((a0 + d0 * step - a1).abs() < 1e-12, "edge {edge}");
            assert!((d0 + edge * a0 * step - d1).abs() < 1e-12, "edge {edge}");
        }
        // asymptotic branch and downward stepping at the positive switchover
        let direct = asymptotic_positive(8.0f64);
        let stepped = taylor_walk(9.0, asymptotic_positive(9.0).0, asymptotic_positive(9.0).1, 8.0);
        assert!((direct.0 - stepped.0).abs() < 1e-12);
    }

    #[test]
    fn decay_bound() {
        let x = 10.0f64;
        let bound = (-(2.0 / 3.0) * x.powf(1.5)).exp() * x.powf(-0.25) / (2.0 * std::f64::consts::PI.sqrt());
        let a = airy(x).0;
        assert!(a > 0.0 && a <= 2.0 * bound);
    }

    #[test]
    fn equation_residual() {
        let h = 1e-4;
        let mut x = -5.0f64;
        while x <= 5.0 {
            let second = (airy(x + h).1 - airy(x - h).1) / (2.0 * h);
            assert!((second - x * airy(x).0).abs() < 1e-6, "x={x}");
            x += 0.1;
        }
    }
}
