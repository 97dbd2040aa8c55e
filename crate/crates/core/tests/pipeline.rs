use proptest::prelude::*;
use zclass::fredholm::{discretize, discretize_on, log_det, lower_factor, operator_norm};
use zclass::kernels::{builtin_profile, FnSymbol, KernelProfile, Params, ProfileKind, TabulatedSymbol};
use zclass::linalg::{outer, Matrix};
use zclass::monodromy::{constant_density_transfer, j_unitarity_residual, split_residual, transfer, ConstantDensity};
use zclass::quadrature::Adaptive;
use zclass::special::airy;
use zclass::spectral::{beta_row, density_at_start, density_matrix, sigma1_at, sigma1_density};
use zclass::{Error, C};

fn sine(gamma: f64) -> KernelProfile<f64> {
    builtin_profile(ProfileKind::Sine, Params { gamma, alpha: 0.0 }).unwrap()
}

fn modulated() -> KernelProfile<f64> {
    let s = FnSymbol::new(|x: f64| {
        let g = (-x * x / 8.0).exp();
        let (s, c) = x.sin_cos();
        (0.5 * g * c, 0.5 * g * s, 0.5 * g * (-x / 4.0 * c - s), 0.5 * g * (-x / 4.0 * s + c))
    });
    KernelProfile::custom(s, 0.0, 3.0, "gauss-modulated").unwrap()
}

fn two_norm(m: &Matrix<f64>) -> f64 {
    let g = m.transpose().matmul(m);
    g.symmetric_eigenvalues().unwrap().last().unwrap().sqrt()
}

#[test]
fn factor_is_causal_and_stable() {
    let bessel = builtin_profile(ProfileKind::BesselSqrtArg, Params { gamma: 0.5, alpha: 0.5 }).unwrap();
    let airy_p = builtin_profile(ProfileKind::Airy, Params::default()).unwrap();
    let ops = [
        discretize(&sine(0.5), 0.0, 2.0, 64).unwrap(),
        discretize(&sine(1.0), 0.0, 4.0, 64).unwrap(),
        discretize(&bessel, 0.0, 4.0, 48).unwrap(),
        discretize_on(&airy_p, -1.0, None, 64).unwrap(),
    ];
    for op in &ops {
        let l = lower_factor(op).unwrap();
        let n = l.rows();
        for i in 0..n {
            assert!(l.row(i)[i + 1..].iter().all(|&v| v == 0.0));
        }
        for k in [1, 5, n / 2] {
            assert_eq!(op.symmetrized.leading(k).cholesky().unwrap(), l.leading(k));
        }
        let inv = Matrix::from_fn(n, n, |i, j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            l.solve_lower(&e)[i]
        });
        let eig = op.symmetrized.symmetric_eigenvalues().unwrap();
        let kappa = eig[n - 1] / eig[0];
        assert!(two_norm(&l) * two_norm(&inv) <= kappa.sqrt() * (1.0 + 1e-8), "{}", op.profile);
    }
}

#[test]
fn sine_operator_is_a_contraction() {
    for gamma in [0.25, 0.5, 1.0] {
        for zeta in [0.5, 2.0, 4.0] {
            let norm = operator_norm(&discretize(&sine(gamma), 0.0, zeta, 64).unwrap()).unwrap();
            assert!(norm < 1.0, "gamma={gamma} zeta={zeta}: {norm}");
        }
    }
}

#[test]
fn airy_trace_matches_closed_form() {
    let p = builtin_profile(ProfileKind::Airy, Params::default()).unwrap();
    for s in [-1.0f64, 0.0, 1.0] {
        let op = discretize_on(&p, s, None, 64).unwrap();
        let trace: f64 = op.rule.nodes.iter().zip(&op.rule.weights).map(|(&x, &w)| w * p.kernel_eval(x, x).unwrap()).sum();
        let (ai, dai) = airy(s);
        let closed = (2.0 * s * s * ai * ai - 2.0 * s * dai * dai - ai * dai) / 3.0;
        let quad = Adaptive::new(1e-13).integrate(
            |x: f64| {
                let (a, d) = airy(x);
                d * d - x * a * a
            },
            s,
            op.truncation.unwrap(),
        );
        assert!((trace - closed).abs() <= 1e-8, "s={s}: {trace} vs {closed}");
        assert!((trace - quad).abs() <= 1e-8);
    }
}

#[test]
fn gaussian_on_wide_interval_is_not_positive() {
    let g = builtin_profile(ProfileKind::Gaussian, Params::default()).unwrap();
    let err = log_det(&discretize(&g, -8.0, 8.0, 64).unwrap()).unwrap_err();
    assert!(matches!(err, Error::NotPositive { .. }));
    assert!(err.to_string().contains("determinant sign undefined"));
}

#[test]
fn custom_profiles_reproduce_builtin_sine() {
    let gamma: f64 = 0.5;
    let r = gamma.sqrt();
    let sym = FnSymbol::new(move |x: f64| (-r * x.sin(), r * x.cos(), -r * x.cos(), -r * x.sin()));
    let custom = KernelProfile::custom(sym, 0.0, 2.0, "sine-by-hand").unwrap();
    let want = log_det(&discretize(&sine(gamma), 0.0, 2.0, 64).unwrap()).unwrap();
    let got = log_det(&discretize(&custom, 0.0, 2.0, 64).unwrap()).unwrap();
    assert!((got - want).abs() <= 1e-14);

    let mut csv = String::from("x,A,B,Aprime,Bprime\n");
    for k in 0..=200 {
        let x = 0.01 * k as f64;
        csv += &format!("{x},{},{},{},{}\n", -r * x.sin(), r * x.cos(), -r * x.cos(), -r * x.sin());
    }
    let tab = TabulatedSymbol::from_reader(csv.as_bytes()).unwrap();
    let tabulated = KernelProfile::custom(tab, 0.0, 2.0, "sine-table").unwrap();
    let got = log_det(&discretize(&tabulated, 0.0, 2.0, 64).unwrap()).unwrap();
    assert!((got - want).abs() <= 1e-7, "{got} vs {want}");
    let a = sigma1_density(&tabulated, 0.0, 2.0, 64).unwrap().total();
    let b = sigma1_density(&sine(gamma), 0.0, 2.0, 64).unwrap().total();
    assert!((a - b).max_abs() <= 1e-6);
}

fn cross_route(p: &KernelProfile<f64>, b: f64) -> f64 {
    let d = sigma1_density(p, 0.0, b, 128).unwrap();
    let cum = d.cumulative(density_at_start(p, 0.0).unwrap());
    let last = *d.rule.nodes.last().unwrap();
    let tail = (d.values().last().copied().unwrap() + density_matrix(d.q_at(b))).scale_re(0.5 * (b - last));
    (*cum.last().unwrap() + tail - sigma1_at(p, 0.0, b, 64).unwrap()).max_abs()
}

#[test]
fn density_integrates_to_sigma1() {
    assert!(cross_route(&sine(0.5), 2.0) <= 1e-4);
    let m = modulated();
    assert!(operator_norm(&discretize(&m, 0.0, 3.0, 64).unwrap()).unwrap() <= 0.5);
    assert!(cross_route(&m, 3.0) <= 1e-4);
}

#[test]
fn density_factorizes_and_is_psd() {
    for p in [sine(0.5), sine(1.0), modulated()] {
        let b = p.domain().1.min(2.5);
        let d = sigma1_density(&p, 0.0, b, 96).unwrap();
        for (i, &q) in d.q.iter().enumerate() {
            let beta = beta_row(q);
            let bstar = [beta[0].conj(), beta[1].conj()];
            assert!((outer(bstar, bstar) - d.at_node(i)).max_abs() <= 1e-12);
            assert!(d.at_node(i).hermitian_eigenvalues().0 >= -1e-11);
        }
    }
}

#[test]
fn monodromy_structure_for_every_profile() {
    let bessel = builtin_profile(ProfileKind::BesselSqrtArg, Params { gamma: 0.5, alpha: 1.0 }).unwrap();
    let cases = [(sine(0.5), 2.0), (bessel, 4.0), (modulated(), 3.0)];
    for (p, b) in &cases {
        let d = sigma1_density(p, 0.0, *b, 96).unwrap();
        for z in [C::new(0.0, 2.0), C::new(1.0, 1.0), C::new(-1.0, 0.5)] {
            assert!(j_unitarity_residual(&d, 0.0, *b, z, 4000).unwrap() <= 1e-8, "{} {z}", p.name());
            assert!(transfer(&d, 0.0, *b, z, 4000).unwrap().det_residual() <= 1e-9);
        }
    }
}

#[test]
fn monodromy_stable_under_refinement() {
    let coarse = sigma1_density(&sine(0.5), 0.0, 2.0, 256).unwrap();
    let fine = sigma1_density(&sine(0.5), 0.0, 2.0, 512).unwrap();
    for z in [C::new(0.0, 2.0), C::new(1.0, 1.0), C::new(3.0, 0.1)] {
        let a = transfer(&coarse, 0.0, 2.0, z, 4000).unwrap().w;
        let b = transfer(&fine, 0.0, 2.0, z, 4000).unwrap().w;
        assert!((a - b).max_abs() <= 1e-6, "{z}");
    }
}

#[test]
fn off_domain_and_cut_are_rejected() {
    let d = sigma1_density(&sine(0.5), 0.0, 2.0, 32).unwrap();
    assert!(matches!(transfer(&d, 0.0, 2.0, C::new(1.0, 0.0), 100), Err(Error::OnCut(_))));
    let g = builtin_profile(ProfileKind::Gaussian, Params::default()).unwrap();
    assert!(matches!(sigma1_density(&g, 0.0, 1.0, 32), Err(Error::WrongKind(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn splitting_at_random_point(c in 0.1f64..1.9) {
        let d = sigma1_density(&sine(0.5), 0.0, 2.0, 128).unwrap();
        let r = split_residual(&d, 0.0, c, 2.0, C::new(0.0, 2.0), 20000).unwrap();
        prop_assert!(r <= 1e-8, "c={} residual={}", c, r);
    }

    #[test]
    fn constant_density_closed_form(
        qre in -1.0f64..1.0, qim in -1.0f64..1.0, zre in -1.0f64..2.0, zim in 0.3f64..2.0, flip in proptest::bool::ANY,
    ) {
        let c = density_matrix(C::new(qre, qim));
        let z = C::new(zre, if flip { -zim } else { zim });
        let w = transfer(&ConstantDensity(c), 0.0, 1.0, z, 20000).unwrap().w;
        prop_assert!((w - constant_density_transfer(c, 0.0, 1.0, z)).max_abs() <= 1e-8);
    }
}

#[test]
fn finite_difference_route_is_second_order() {
    let p = sine(0.5);
    let chol = sigma1_density(&p, 0.0, 2.0, 256).unwrap();
    let residual = |h: f64| {
        let grid: Vec<f64> = (1..=(2.0 / h).round() as usize).map(|k| h * k as f64).collect();
        let fd = zclass::spectral::density_fd(&p, 0.0, &grid, 64).unwrap();
        grid.iter().zip(&fd).map(|(&x, f)| (density_matrix(chol.q_at(x)) - *f).max_abs()).fold(0.0, f64::max)
    };
    let (coarse, fine) = (residual(0.08), residual(0.04));
    let ratio = coarse / fine;
    assert!((3.0..=5.0).contains(&ratio), "{coarse:e} {fine:e}");
}
