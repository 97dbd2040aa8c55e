use proptest::prelude::*;
use zclass::kernels::{builtin_profile, f1_vector, zclass_jmodule, FnSymbol, KernelProfile, Params, ProfileKind};
use zclass::linalg::{outer, sandwich, Mat2};
use zclass::C;

fn zclass_profiles() -> Vec<KernelProfile<f64>> {
    let mut out = vec![builtin_profile(ProfileKind::Sine, Params { gamma: 0.7, alpha: 0.0 }).unwrap()];
    for alpha in [0.0, 0.5, 1.3] {
        let p = Params { gamma: 0.6, alpha };
        out.push(builtin_profile(ProfileKind::Bessel, p).unwrap());
        out.push(builtin_profile(ProfileKind::BesselSqrtArg, p).unwrap());
    }
    let custom = FnSymbol::new(|x: f64| {
        let g = (-x * x / 8.0).exp();
        let (s, c) = x.sin_cos();
        (0.3 * g * c, 0.3 * g * s, 0.3 * g * (-x / 4.0 * c - s), 0.3 * g * (-x / 4.0 * s + c))
    });
    out.push(KernelProfile::custom(custom, -3.0, 3.0, "gauss-modulated").unwrap());
    out
}

fn inside(p: &KernelProfile<f64>, u: f64) -> f64 {
    let (lo, hi) = p.domain();
    let (lo, hi) = (lo.max(-6.0) + 0.05, hi.min(6.0));
    lo + (hi - lo) * u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_symmetric_and_real(u in 0.0f64..1.0, v in 0.0f64..1.0) {
        for p in zclass_profiles() {
            let (x, t) = (inside(&p, u), inside(&p, v));
            let k = p.kernel_eval(x, t).unwrap();
            prop_assert!(k.is_finite());
            prop_assert!((k - p.kernel_eval(t, x).unwrap()).abs() <= 1e-12, "{} at ({x}, {t})", p.name());
        }
        for kind in [ProfileKind::Airy, ProfileKind::Gaussian] {
            let p = builtin_profile(kind, Params::default()).unwrap();
            let (x, t) = (8.0 * u - 3.0, 8.0 * v - 3.0);
            prop_assert!((p.kernel_eval(x, t).unwrap() - p.kernel_eval(t, x).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn f1_relations(u in 0.0f64..1.0) {
        let j = Mat2::j();
        for p in zclass_profiles() {
            let x = inside(&p, u);
            let f = f1_vector(&p, x).unwrap();
            let m = zclass_jmodule(p.psi(x).unwrap()).unwrap();
            prop_assert!((outer(f, f) - j * (m.r - m.rinv)).max_abs() <= 1e-12);
            let q = sandwich(f, j, f);
            prop_assert!(q.norm() <= 1e-13);
            // {I + (1/4)(F₁*JF₁)²}^{1/2}
            let l = (C::new(1.0, 0.0) + q * q * 0.25).sqrt();
            prop_assert!((l - 1.0).norm() <= 1e-13);
        }
    }

    #[test]
    fn squared_module_is_square(re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let m = zclass_jmodule(C::new(re, im)).unwrap();
        prop_assert!((m.rsq - m.r * m.r).max_abs() <= 1e-13);
        prop_assert!((m.r * m.rinv - Mat2::identity()).max_abs() <= 1e-13);
    }
}

#[test]
fn kernel_is_continuous_at_diagonal() {
    for p in zclass_profiles() {
        for u in [0.2, 0.5, 0.8] {
            let x = inside(&p, u);
            let d = p.kernel_eval(x, x).unwrap();
            let diffs: Vec<f64> = [1e-4, 1e-5].iter().map(|&h| (p.kernel_eval(x, x + h).unwrap() - d).abs() / h).collect();
            assert!(diffs.iter().all(|&c| c <= 1.0), "{} at {x}: {diffs:?}", p.name());
        }
    }
}
