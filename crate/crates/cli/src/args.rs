use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use zclass::kernels::ProfileKind;
use zclass::C;

#[derive(Parser, Debug)]
#[command(name = "zclass", version, about = "Fredholm determinants, spectral functions and monodromy of Z-class kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fredholm determinant over a ζ-grid
    Det(DetArgs),
    /// σ₁(ζ) and M = iJσ₁ over a ζ-grid
    Sigma(SigmaArgs),
    /// σ₁′ by the triangular factor and by differentiating σ₁, with their difference
    Density(DensityArgs),
    /// Transfer matrix W at given spectral points
    Monodromy(MonodromyArgs),
    /// Boundary jump residual ‖W₊ − W₋R²‖ as ε decreases
    Jump(JumpArgs),
    /// d/dζ log det against −tr σ₁(ζ)/ζ for the sine kernel
    Diz(DizArgs),
    /// Scalar outer factor from a modulus CSV
    Outer(OuterArgs),
    /// Similarity residuals of the triangular model
    Diag(DiagArgs),
    /// Direct kernel against its Christoffel–Darboux integral
    Cd(CdArgs),
    /// Run the acceptance suite and print a JSON report
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    #[arg(long, default_value = "sine", value_parser = parse_kind)]
    pub kernel: ProfileKind,
    /// Tabulated profile with columns x,A,B,Aprime,Bprime; overrides --kernel
    #[arg(long)]
    pub profile_csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ZetaArgs {
    #[arg(long, conflicts_with = "zeta_grid")]
    pub zeta: Option<f64>,
    /// start:stop:step, both ends included
    #[arg(long, value_parser = parse_grid)]
    pub zeta_grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct DetArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub zeta: ZetaArgs,
    /// Left end for Z-class kernels (default: left end of the domain, or 0)
    #[arg(long)]
    pub a: Option<f64>,
    /// Right end for airy/gaussian (default: automatic truncation)
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub zeta: ZetaArgs,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// Points where both routes are compared (default: 50 equal steps in (a, b])
    #[arg(long, value_parser = parse_grid)]
    pub zeta_grid: Option<Grid>,
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    /// Nodes per ζ for the differentiated route
    #[arg(long, default_value_t = 64)]
    pub fd_nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// re,im; repeat for several points
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required = true)]
    pub z: Vec<C<f64>>,
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    #[arg(long, default_value_t = 4000)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct JumpArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// Interior points (default: the midpoint)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3")]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
    #[arg(long, default_value_t = 4000)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DizArgs {
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, value_parser = parse_grid, default_value = "0.2:2:0.02")]
    pub zeta_grid: Grid,
    #[arg(long, default_value_t = 96)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct OuterArgs {
    /// CSV with header x,R
    #[arg(long)]
    pub modulus: PathBuf,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required = true)]
    pub z: Vec<C<f64>>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.7,1.5", allow_hyphen_values = true)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub ell: f64,
    #[arg(long, default_value_t = 10)]
    pub degree: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct CdArgs {
    #[arg(long, default_value = "bessel_sqrtarg", value_parser = parse_kind)]
    pub kernel: ProfileKind,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2", allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", allow_hyphen_values = true)]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these criteria, e.g. A1,A7
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Accepted for symmetry with the other subcommands; the report is always JSON
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    /// Points `start + k·step` up to `stop`, which is included when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.start + self.step * k as f64).collect()
    }
}

fn parse_kind(s: &str) -> Result<ProfileKind, String> {
    s.parse().map_err(|e: zclass::Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("expected start:stop:step, got `{s}`"));
    };
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    let g = Grid { start: num(start)?, stop: num(stop)?, step: num(step)? };
    if !g.step.is_finite() || g.step <= 0.0 || !g.start.is_finite() || !g.stop.is_finite() || g.stop < g.start {
        return Err(format!("grid `{s}` needs step > 0 and stop >= start"));
    }
    if (g.stop - g.start) / g.step > 1e6 {
        return Err(format!("grid `{s}` has too many points"));
    }
    Ok(g)
}

fn parse_complex(s: &str) -> Result<C<f64>, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got `{s}`"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok(C::new(num(re)?, num(im)?))
}
