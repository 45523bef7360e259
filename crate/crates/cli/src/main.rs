//! `ptensor` command-line workbench.
//!
//! Exit codes: 0 success, 1 violated invariant or non-convergence,
//! 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ptensor::alpha::{self, AlphaConfig, AlphaMode, OperatorKind};
use ptensor::batch::{batch_experiment, output_in, summary_table};
use ptensor::bounds::{verify_bounds, BoundConfig};
use ptensor::classify::{classify, is_not_p_witness, witness_search, PStatus, PVerdict, WitnessConfig};
use ptensor::eigen::{completeness, eigenpairs, Completeness, EigConfig, EigenKind, Eigenpair};
use ptensor::gen::{GeneratorKind, GeneratorSpec};
use ptensor::io::{read_tensor, write_json};
use ptensor::spectral::delta_report;
use ptensor::tcp::{solve_tcp, TcpConfig, TcpInstance};
use ptensor::tensor::e_apply;
use ptensor::{Error, Tensor};

#[derive(Parser)]
#[command(name = "ptensor", version, about = "P-tensor constants, eigenvalues, classification and complementarity")]
struct Cli {
    /// Seed for every randomized component.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance override (alpha tol, TCP tol, chain slack, eigen residual).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Alpha search mode.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    GridCertified,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyOp {
    /// `A x^{m-1}`
    A,
    T,
    F,
    /// `||x||_2^{m-2} x` (even m)
    E,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    T,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum EigArg {
    H,
    Z,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// The unit tensor.
    Identity,
    DiagonalPositive,
    IdentityPlusPerturbation,
    SymmetricGaussian,
    DiagonallyDominant,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.5)]
    lo: f64,
    #[arg(long, default_value_t = 2.0)]
    hi: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    offdiag_scale: f64,
    #[arg(long, default_value_t = 0.5)]
    margin: f64,
}

impl GenArgs {
    fn spec(&self) -> GeneratorSpec {
        let kind = match self.kind {
            KindArg::Identity => GeneratorKind::IdentityPlusPerturbation { eps: 0.0 },
            KindArg::DiagonalPositive => GeneratorKind::DiagonalPositive { lo: self.lo, hi: self.hi },
            KindArg::IdentityPlusPerturbation => GeneratorKind::IdentityPlusPerturbation { eps: self.eps },
            KindArg::SymmetricGaussian => GeneratorKind::SymmetricGaussian { sigma: self.sigma },
            KindArg::DiagonallyDominant => GeneratorKind::DiagonallyDominant {
                offdiag_scale: self.offdiag_scale,
                margin: self.margin,
            },
        };
        GeneratorSpec { kind, m: self.m, n: self.n }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate A x^{m-1}, T_A(x), F_A(x) or E x^{m-1}.
    Apply {
        tensor: PathBuf,
        /// Comma-separated vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, value_enum, ignore_case = true, default_value = "a")]
        op: ApplyOp,
    },
    /// Real H- or Z-eigenpairs.
    Eig {
        tensor: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value = "h")]
        kind: EigArg,
    },
    /// delta_H and delta_Z over all principal sub-tensors.
    Delta {
        tensor: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value = "both")]
        kind: EigArg,
    },
    /// alpha(T_A) or alpha(F_A).
    Alpha {
        tensor: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value = "t")]
        op: OpArg,
        /// Grid resolution h.
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// P / P0 classification with an independent witness search.
    CheckP { tensor: PathBuf },
    /// Solve a tensor complementarity problem.
    TcpSolve { instance: PathBuf },
    /// Check the bound chains, monotonicity and norm bounds.
    VerifyBounds {
        tensor: PathBuf,
        #[arg(long)]
        no_monotonicity: bool,
    },
    /// Generate a seeded tensor.
    Gen(GenArgs),
    /// verify-bounds over seeded generated instances.
    Batch {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        count: usize,
        /// Directory for report.json, summary.txt and reproducers.
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    /// Exit 1.
    Invariant(String),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(_) => Failure::Invariant(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    match out {
        Some(path) => write_json(path, value)?,
        None => {
            let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
            println!("{text}");
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<Tensor, Failure> {
    read_tensor(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct EigOutput {
    completeness: Completeness,
    eigenpairs: Vec<Eigenpair>,
}

#[derive(Serialize)]
struct CheckOutput {
    verdict: PVerdict,
    /// Result of the independent direct search.
    independent_witness: Option<Vec<f64>>,
    consistent: bool,
}

impl Cli {
    fn alpha_cfg(&self) -> AlphaConfig {
        let mut cfg = AlphaConfig::default();
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                ModeArg::GridCertified => AlphaMode::GridCertified,
                ModeArg::Heuristic => AlphaMode::Heuristic,
            };
        }
        cfg
    }

    fn eig_cfg(&self) -> EigConfig {
        let mut cfg = EigConfig::default();
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.tol {
            cfg.residual_tol = t;
        }
        cfg
    }

    fn bound_cfg(&self) -> BoundConfig {
        let mut cfg = BoundConfig {
            alpha: self.alpha_cfg(),
            eig: self.eig_cfg(),
            ..BoundConfig::default()
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        cfg
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.output.as_deref();
    match &cli.cmd {
        Command::Apply { tensor, x, op } => {
            let a = load(tensor)?;
            let y = match op {
                ApplyOp::A => a.apply(x)?,
                ApplyOp::T => alpha::t_operator(&a, x)?,
                ApplyOp::F => alpha::f_operator(&a, x)?,
                ApplyOp::E => {
                    if x.len() != a.dim() {
                        return Err(Error::DimensionMismatch { expected: a.dim(), actual: x.len() }.into());
                    }
                    e_apply(x, a.order())?
                }
            };
            emit(out, &y)
        }
        Command::Eig { tensor, kind } => {
            let a = load(tensor)?;
            let cfg = cli.eig_cfg();
            let kinds: &[EigenKind] = match kind {
                EigArg::H => &[EigenKind::H],
                EigArg::Z => &[EigenKind::Z],
                EigArg::Both => &[EigenKind::H, EigenKind::Z],
            };
            let mut pairs = Vec::new();
            for &k in kinds {
                pairs.extend(eigenpairs(&a, k, &cfg)?);
            }
            emit(
                out,
                &EigOutput {
                    completeness: completeness(a.dim()),
                    eigenpairs: pairs,
                },
            )
        }
        Command::Delta { tensor, kind } => {
            let a = load(tensor)?;
            let kinds: &[EigenKind] = match kind {
                EigArg::H => &[EigenKind::H],
                EigArg::Z => &[EigenKind::Z],
                EigArg::Both => &[EigenKind::H, EigenKind::Z],
            };
            emit(out, &delta_report(&a, &cli.eig_cfg(), kinds)?)
        }
        Command::Alpha { tensor, op, resolution } => {
            let a = load(tensor)?;
            let mut cfg = cli.alpha_cfg();
            if let Some(h) = resolution {
                cfg.grid_resolution = *h;
            }
            let kind = match op {
                OpArg::T => OperatorKind::T,
                OpArg::F => OperatorKind::F,
            };
            emit(out, &alpha::alpha(&a, kind, &cfg)?)
        }
        Command::CheckP { tensor } => {
            let a = load(tensor)?;
            let verdict = classify(&a, &cli.alpha_cfg())?;
            let wcfg = WitnessConfig {
                seed: cli.seed.unwrap_or(0),
                ..WitnessConfig::default()
            };
            let independent = witness_search(&a, &wcfg)?;
            let witness_ok = verdict.witness.as_ref().is_none_or(|x| is_not_p_witness(&a, x));
            let consistent = witness_ok && !(verdict.status == PStatus::P && independent.is_some());
            emit(
                out,
                &CheckOutput {
                    verdict,
                    independent_witness: independent,
                    consistent,
                },
            )?;
            if consistent {
                Ok(())
            } else {
                Err(Failure::Invariant("classification and witness search disagree".into()))
            }
        }
        Command::TcpSolve { instance } => {
            let inst = TcpInstance::load(instance)
                .map_err(|e| Failure::Input(format!("{}: {e}", instance.display())))?;
            let mut cfg = TcpConfig::default();
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(t) = cli.tol {
                cfg.tol = t;
            }
            let sol = solve_tcp(&inst, &cfg)?;
            emit(out, &sol)?;
            if sol.converged {
                Ok(())
            } else {
                Err(Failure::Invariant(format!(
                    "no start converged; best residual {:e}",
                    sol.residual
                )))
            }
        }
        Command::VerifyBounds { tensor, no_monotonicity } => {
            let a = load(tensor)?;
            let mut cfg = cli.bound_cfg();
            cfg.check_monotonicity = !no_monotonicity;
            let report = verify_bounds(&a, &cfg)?;
            emit(out, &report)?;
            let names: Vec<String> = report.violations().iter().map(|v| v.name.clone()).collect();
            if names.is_empty() {
                Ok(())
            } else {
                Err(Failure::Invariant(format!("violated: {}", names.join("; "))))
            }
        }
        Command::Gen(args) => {
            let t = args.spec().generate(cli.seed.unwrap_or(0))?;
            emit(out, &t)
        }
        Command::Batch { gen, count, out: dir } => {
            let spec = gen.spec();
            let report = batch_experiment(&spec, *count, cli.seed.unwrap_or(0), &cli.bound_cfg(), Some(&output_in(dir)))?;
            print!("{}", summary_table(&report));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
