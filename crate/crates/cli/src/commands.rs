use std::io::Write;
use std::path::Path;

use zclass::diagonal::{composition_residual, frac_power, monomial_gain, similarity_residual, PolySample};
use zclass::fredholm::{discretize, discretize_on, log_det};
use zclass::kernels::{airy_cd, bessel_cd, builtin_profile, Kind, KernelProfile, Params, ProfileKind, TabulatedSymbol};
use zclass::monodromy::{j_unitarity_residual, jump_residual_at, transfer};
use zclass::prediction::{outer_transfer, zero_free_bound, ModulusProfile};
use zclass::spectral::{density_fd, density_matrix, diz_residual, m_matrix, sigma1_at, sigma1_density};
use zclass::verify;
use zclass::Error;

use crate::args::*;
use crate::table::*;

/// Why a command stopped; maps to the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> i32 {
    let result = match command {
        Command::Det(a) => det(a),
        Command::Sigma(a) => sigma(a),
        Command::Density(a) => density(a),
        Command::Monodromy(a) => monodromy(a),
        Command::Jump(a) => jump(a),
        Command::Diz(a) => diz(a),
        Command::Outer(a) => outer(a),
        Command::Diag(a) => diag(a),
        Command::Cd(a) => cd(a),
        Command::Verify(a) => verify_suite(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            3
        }
        Err(Failure::Verification) => 1,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    let written = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn write_table(t: &Table, o: &Output) -> Outcome {
    emit(&t.render(o.json), o.out.as_deref())
}

fn profile(k: &KernelArgs) -> Result<KernelProfile<f64>, Failure> {
    if let Some(path) = &k.profile_csv {
        let tab = TabulatedSymbol::from_path(path)?;
        let (lo, hi) = tab.range();
        return Ok(KernelProfile::custom(tab, lo, hi, path.display().to_string())?);
    }
    Ok(builtin_profile(k.kernel, Params { gamma: k.gamma, alpha: k.alpha })?)
}

fn left_end(p: &KernelProfile<f64>, a: Option<f64>) -> f64 {
    a.unwrap_or_else(|| {
        let lo = p.domain().0;
        if lo.is_finite() {
            lo
        } else {
            0.0
        }
    })
}

fn zetas(z: &ZetaArgs) -> Result<Vec<f64>, Failure> {
    match (z.zeta, z.zeta_grid) {
        (Some(v), _) => Ok(vec![v]),
        (None, Some(g)) => Ok(g.points()),
        (None, None) => Err(Failure::Usage("need --zeta or --zeta-grid".into())),
    }
}

fn require_zclass(p: &KernelProfile<f64>) -> Outcome {
    if p.kind() != Kind::ZClass {
        return Err(Failure::Usage(format!("`{}` is not a Z-class profile", p.name())));
    }
    Ok(())
}

fn det(a: DetArgs) -> Outcome {
    let p = profile(&a.kernel)?;
    let mut t = Table::new(cols(&["zeta", "left", "right", "nodes", "log_det", "det"]));
    for zeta in zetas(&a.zeta)? {
        let op = if p.kind() == Kind::ZClass {
            discretize(&p, left_end(&p, a.a), zeta, a.nodes)?
        } else {
            discretize_on(&p, zeta, a.b, a.nodes)?
        };
        let ld = log_det(&op)?;
        t.push(vec![
            Cell::Num(zeta),
            Cell::Num(op.rule.a),
            Cell::Num(op.rule.b),
            Cell::Int(op.len() as u64),
            Cell::Num(ld),
            Cell::Num(ld.exp()),
        ]);
    }
    write_table(&t, &a.output)
}

fn sigma(a: SigmaArgs) -> Outcome {
    let p = profile(&a.kernel)?;
    require_zclass(&p)?;
    let left = left_end(&p, a.a);
    let mut header = cols(&["zeta"]);
    header.extend(matrix_cols("s"));
    header.extend(matrix_cols("m"));
    let mut t = Table::new(header);
    for zeta in zetas(&a.zeta)? {
        let s = sigma1_at(&p, left, zeta, a.nodes)?;
        let mut row = vec![Cell::Num(zeta)];
        row.extend(matrix_cells(s));
        row.extend(matrix_cells(m_matrix(s)));
        t.push(row);
    }
    write_table(&t, &a.output)
}

fn density(a: DensityArgs) -> Outcome {
    let p = profile(&a.kernel)?;
    require_zclass(&p)?;
    let left = left_end(&p, a.a);
    let grid = match a.zeta_grid {
        Some(g) => g.points(),
        None => (1..=50).map(|k| left + (a.b - left) * k as f64 / 50.0).collect(),
    };
    let chol = sigma1_density(&p, left, a.b, a.nodes)?;
    let fd = density_fd(&p, left, &grid, a.fd_nodes)?;
    let mut header = cols(&["x"]);
    header.extend(matrix_cols("chol"));
    header.extend(matrix_cols("fd"));
    header.push("residual".into());
    let mut t = Table::new(header);
    for (&x, &f) in grid.iter().zip(&fd) {
        let c = density_matrix(chol.q_at(x));
        let mut row = vec![Cell::Num(x)];
        row.extend(matrix_cells(c));
        row.extend(matrix_cells(f));
        row.push(Cell::Num((c - f).max_abs()));
        t.push(row);
    }
    write_table(&t, &a.output)
}

fn monodromy(a: MonodromyArgs) -> Outcome {
    let p = profile(&a.kernel)?;
    require_zclass(&p)?;
    let left = left_end(&p, a.a);
    let d = sigma1_density(&p, left, a.b, a.nodes)?;
    let mut header = complex_cols("z");
    header.extend(matrix_cols("w"));
    header.extend(complex_cols("det"));
    header.push("j_unitarity".into());
    let mut t = Table::new(header);
    for &z in &a.z {
        let w = transfer(&d, left, a.b, z, a.steps)?;
        let mut row = complex_cells(z);
        row.extend(matrix_cells(w.w));
        row.extend(complex_cells(w.w.det()));
        row.push(Cell::Num(j_unitarity_residual(&d, left, a.b, z, a.steps)?));
        t.push(row);
    }
    write_table(&t, &a.output)
}

fn jump(a: JumpArgs) -> Outcome {
    let p = profile(&a.kernel)?;
    require_zclass(&p)?;
    let left = left_end(&p, a.a);
    let d = sigma1_density(&p, left, a.b, a.nodes)?;
    let xs = if a.x.is_empty() { vec![0.5 * (left + a.b)] } else { a.x.clone() };
    let mut t = Table::new(cols(&["x", "eps", "residual", "ratio"]));
    for x in xs {
        let psi = p.psi(x)?;
        let mut prev: Option<f64> = None;
        for &eps in &a.eps {
            let r = jump_residual_at(&d, psi, left, a.b, x, eps, a.steps)?;
            let ratio = prev.map_or(Cell::Empty, |q| Cell::Num(r / q));
            t.push(vec![Cell::Num(x), Cell::Num(eps), Cell::Num(r), ratio]);
            prev = Some(r);
        }
    }
    write_table(&t, &a.output)
}

fn diz(a: DizArgs) -> Outcome {
    let rows = diz_residual(a.gamma, &a.zeta_grid.points(), a.nodes)?;
    let mut t = Table::new(cols(&["zeta", "lhs", "rhs", "residual"]));
    for r in rows {
        t.push(vec![Cell::Num(r.zeta), Cell::Num(r.lhs), Cell::Num(r.rhs), Cell::Num(r.residual)]);
    }
    write_table(&t, &a.output)
}

fn outer(a: OuterArgs) -> Outcome {
    let m = ModulusProfile::<f64>::from_path(&a.modulus)?;
    let mut header = complex_cols("z");
    header.extend(complex_cols("w"));
    header.extend(cols(&["abs_w", "zero_free_bound"]));
    let mut t = Table::new(header);
    for &z in &a.z {
        let w = outer_transfer(&m, z)?;
        let mut row = complex_cells(z);
        row.extend(complex_cells(w));
        row.push(Cell::Num(w.norm()));
        row.push(Cell::Num(zero_free_bound(&m, z)));
        t.push(row);
    }
    write_table(&t, &a.output)
}

fn diag(a: DiagArgs) -> Outcome {
    let mut header = cols(&["alpha", "n", "x"]);
    header.extend(complex_cols("bp"));
    header.extend(cols(&["similarity", "composition", "gain"]));
    let mut t = Table::new(header);
    let xs = [a.ell / 4.0, a.ell / 2.0, 3.0 * a.ell / 4.0];
    for &alpha in &a.alpha {
        for n in 0..=a.degree {
            let p = PolySample::monomial(n, a.ell, alpha)?;
            let gain = monomial_gain(n, alpha)?;
            for &x in &xs {
                let mut row = vec![Cell::Num(alpha), Cell::Int(n as u64), Cell::Num(x)];
                row.extend(complex_cells(frac_power(&p, 1, x)?));
                row.push(Cell::Num(similarity_residual(&p, &[x])?));
                row.push(Cell::Num(composition_residual(&p, &[x])?));
                row.push(Cell::Num(gain));
                t.push(row);
            }
        }
    }
    write_table(&t, &a.output)
}

fn cd(a: CdArgs) -> Outcome {
    let p = builtin_profile(a.kernel, Params { gamma: a.gamma, alpha: a.alpha })?;
    let mut t = Table::new(cols(&["x", "t", "direct", "cd", "residual"]));
    for &x in &a.x {
        for &s in &a.t {
            let integral = match a.kernel {
                ProfileKind::Bessel | ProfileKind::BesselSqrtArg => bessel_cd(a.alpha, a.gamma, x, s)?,
                ProfileKind::Airy => airy_cd(x, s)?,
                other => return Err(Failure::Usage(format!("no Christoffel–Darboux form for `{}`", other.name()))),
            };
            let direct = p.kernel_eval(x, s)?;
            t.push(vec![Cell::Num(x), Cell::Num(s), Cell::Num(direct), Cell::Num(integral), Cell::Num((direct - integral).abs())]);
        }
    }
    write_table(&t, &a.output)
}

fn verify_suite(a: VerifyArgs) -> Outcome {
    let criteria = if a.only.is_empty() {
        verify::run_criteria()
    } else {
        a.only
            .iter()
            .map(|id| verify::run_criterion(id).ok_or_else(|| Failure::Usage(format!("unknown criterion `{id}`"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut report = verify::report(criteria);
    report.provenance.versions.insert("zclass-cli".into(), env!("CARGO_PKG_VERSION").into());
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    emit(&text, a.out.as_deref())?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
