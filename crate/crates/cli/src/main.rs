use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use drsplit::engine::{self, RunConfig, TightnessReport};
use drsplit::propsuite::{self, SamplerConfig};
use drsplit::rates::{self, AlgoParams, Figure, Regime, RegimeParams};
use drsplit::worstcase::{self, RotationSpec};

#[derive(Parser)]
#[command(name = "drsplit", version, about = "Douglas-Rachford rate bounds, worst-case instances and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate bound for given (γ, α).
    Rate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        regime: u8,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Optimal (γ, α) and the resulting rate.
    Optimal {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        regime: u8,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Run a worst-case instance and compare the measured rate with the bound.
    Simulate(SimulateArgs),
    /// Write comparison curves as CSV.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        figure: u8,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        ratio_min: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 10.0)]
        ratio_max: f64,
        /// Grid increment.
        #[arg(long, alias = "steps", default_value_t = 0.25)]
        step: f64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the sampled inequality checks.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = propsuite::DEFAULT_N_PAIRS)]
        n_pairs: usize,
        /// Also run the deliberately broken variants, which should be flagged.
        #[arg(long)]
        negative_controls: bool,
    },
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    regime: u8,
    /// Rotation scale (regimes 2 and 3).
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Rotation angle in radians (regimes 2 and 3).
    #[arg(long, allow_negative_numbers = true)]
    psi: Option<f64>,
    /// Regime-3 shape parameter, > 1.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Build the instance from (σ, β) instead of (d, ψ, c).
    #[arg(long, requires = "beta", allow_negative_numbers = true)]
    sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    gamma: f64,
    /// Defaults to 0.9 in regime 1 and 1 otherwise.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = engine::DEFAULT_MAX_ITERS)]
    iters: usize,
}

enum Failure {
    Precondition(String),
    Internal(String),
}

impl From<drsplit::Error> for Failure {
    fn from(e: drsplit::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(format!("io: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(format!("json: {e}"))
    }
}

fn regime(n: u8) -> Regime {
    Regime::from_number(n).expect("clap restricts the range")
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Round to 9 significant digits and print the shortest decimal that
/// parses back to the rounded value.
fn sig9(v: f64) -> String {
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

#[derive(Serialize)]
struct RateOut {
    regime: u8,
    sigma: f64,
    beta: f64,
    gamma: f64,
    alpha: f64,
    delta: f64,
    rate: f64,
    alpha_feasible_upper: f64,
}

#[derive(Serialize)]
struct OptimalOut {
    regime: u8,
    sigma: f64,
    beta: f64,
    gamma: f64,
    alpha: f64,
    rate: f64,
}

#[derive(Serialize)]
struct SimulateOut {
    regime: u8,
    sigma: f64,
    beta: f64,
    gamma: f64,
    alpha: f64,
    iters: usize,
    #[serde(flatten)]
    report: TightnessReport,
}

fn cmd_rate(n: u8, sigma: f64, beta: f64, gamma: f64, alpha: f64) -> Result<ExitCode, Failure> {
    let p = RegimeParams::new(regime(n), sigma, beta)?;
    let bound = rates::rate(&p, &AlgoParams::new(gamma, alpha)?)?;
    print_json(&RateOut {
        regime: n,
        sigma,
        beta,
        gamma,
        alpha,
        delta: bound.delta,
        rate: bound.rate,
        alpha_feasible_upper: bound.alpha_feasible_upper,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimal(n: u8, sigma: f64, beta: f64) -> Result<ExitCode, Failure> {
    let p = RegimeParams::new(regime(n), sigma, beta)?;
    let opt = rates::optimal(&p)?;
    print_json(&OptimalOut {
        regime: n,
        sigma,
        beta,
        gamma: opt.gamma_star,
        alpha: opt.alpha_star,
        rate: opt.rate_star,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn spec_from_args(args: &SimulateArgs, r: Regime) -> Result<RotationSpec, Failure> {
    let explicit = args.d.is_some() || args.c.is_some();
    if let (Some(sigma), Some(beta)) = (args.sigma, args.beta) {
        if explicit {
            return Err(Failure::Precondition(
                "cli: give either --sigma/--beta or --d/--psi/--c, not both".into(),
            ));
        }
        return Ok(match r {
            Regime::StrongMonoLipschitz => worstcase::regime2_spec_for(sigma, beta)?,
            _ => worstcase::regime3_spec_for(sigma, beta, args.psi.unwrap_or(FRAC_PI_4))?,
        });
    }
    let d = args.d.unwrap_or(1.0);
    Ok(match r {
        Regime::StrongMonoLipschitz => RotationSpec::new(d, args.psi.unwrap_or(FRAC_PI_6))?,
        _ => RotationSpec::with_c(d, args.psi.unwrap_or(FRAC_PI_4), args.c.unwrap_or(2.0))?,
    })
}

fn cmd_simulate(args: &SimulateArgs) -> Result<ExitCode, Failure> {
    let r = regime(args.regime);
    let inst = match r {
        Regime::SplitStrongCoco => {
            if args.d.is_some() || args.psi.is_some() || args.c.is_some() || args.sigma.is_some() {
                return Err(Failure::Precondition(
                    "cli: the regime-1 instance takes only --beta (σ is 1/β)".into(),
                ));
            }
            worstcase::build_regime1(args.beta.unwrap_or(1.0), args.gamma, args.alpha.unwrap_or(0.9))?
        }
        Regime::StrongMonoLipschitz => {
            if args.c.is_some() {
                return Err(Failure::Precondition("cli: --c applies to regime 3 only".into()));
            }
            let spec = spec_from_args(args, r)?;
            worstcase::build_regime2(&spec, args.gamma, args.alpha.unwrap_or(1.0))?
        }
        Regime::StrongMonoCocoercive => {
            let spec = spec_from_args(args, r)?;
            worstcase::build_regime3(&spec, args.gamma, args.alpha.unwrap_or(1.0))?
        }
    };
    let cfg = RunConfig::new(args.iters, engine::DEFAULT_STOP_NORM, inst.z0())?;
    let report = engine::verify_tightness(&inst, &cfg)?;
    let p = inst.regime_params();
    print_json(&SimulateOut {
        regime: args.regime,
        sigma: p.sigma(),
        beta: p.beta(),
        gamma: inst.params().gamma(),
        alpha: inst.params().alpha(),
        iters: args.iters,
        report,
    })?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_sweep(figure: u8, min: f64, max: f64, step: f64, out: Option<&PathBuf>) -> Result<ExitCode, Failure> {
    let figure = Figure::from_number(figure).expect("clap restricts the range");
    let rows = rates::sweep(&rates::ratio_grid(min, max, step)?)?;
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(figure.columns())?;
    for row in &rows {
        w.write_record(figure.values(row).map(sig9))?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(seed: u64, n_pairs: usize, controls: bool) -> Result<ExitCode, Failure> {
    let cfg = SamplerConfig::new(seed, n_pairs, propsuite::DEFAULT_POINT_SCALE)?;
    let checks = propsuite::run_all(&cfg)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{:<28} {:>7} {:>14}  result", "check", "samples", "max_violation")?;
    let mut ok = true;
    for c in &checks {
        ok &= c.pass;
        let verdict = if c.pass { "pass" } else { "FAIL" };
        writeln!(out, "{:<28} {:>7} {:>14.6e}  {verdict}", c.name, c.samples, c.max_violation)?;
    }
    if controls {
        writeln!(out)?;
        writeln!(out, "{:<28} {:>7} {:>14}  result", "negative control", "samples", "max_violation")?;
        for c in propsuite::run_negative_controls(&cfg)? {
            ok &= c.detected;
            let verdict = if c.detected { "violated (expected)" } else { "NOT DETECTED" };
            writeln!(out, "{:<28} {:>7} {:>14.6e}  {verdict}", c.name, c.samples, c.max_violation)?;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Rate {
            regime,
            sigma,
            beta,
            gamma,
            alpha,
        } => cmd_rate(*regime, *sigma, *beta, *gamma, *alpha),
        Command::Optimal { regime, sigma, beta } => cmd_optimal(*regime, *sigma, *beta),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep {
            figure,
            ratio_min,
            ratio_max,
            step,
            out,
        } => cmd_sweep(*figure, *ratio_min, *ratio_max, *step, out.as_ref()),
        Command::Verify {
            seed,
            n_pairs,
            negative_controls,
        } => cmd_verify(*seed, *n_pairs, *negative_controls),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
