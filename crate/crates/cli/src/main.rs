use adhesion_cli::config::{BcKind, Overrides, RunConfig};
use adhesion_cli::{run_to_dir, sweep, OUTPUT_ROOT_ENV};
use adhesion_core::analysis::{bifurcation_alpha, growth_rate, mode_wavenumber};
use adhesion_core::kernel::{validate_suitable, SAMPLES_PER_RADIUS};
use adhesion_core::{InteractionKernel, OmegaKind, SamplingDomain};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "adhesion", version, about = "Non-local cell-cell adhesion simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
struct RunFlags {
    /// TOML run configuration; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    bc: Option<BcKind>,
    /// Wall strength for both walls (adhesive or repulsive only).
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (run) or output root (sweep).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Final time.
    #[arg(long)]
    tf: Option<f64>,
    /// Error tolerance, applied as both relative and absolute.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation.
    Run(RunFlags),
    /// Run every alpha x seed combination.
    Sweep {
        #[command(flatten)]
        flags: RunFlags,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
    },
    /// Check a sampling domain against the suitability conditions.
    Validate {
        #[arg(long, value_enum, default_value = "noflux")]
        bc: BcKind,
        #[arg(long, default_value_t = 5.0)]
        length: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Print the bifurcation values alpha_n of the homogeneous state.
    Dispersion {
        #[arg(long, default_value_t = 3)]
        modes: usize,
        #[arg(long, default_value_t = 5.0)]
        length: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1.0)]
        diffusion: f64,
        /// Homogeneous density.
        #[arg(long, default_value_t = 1.0)]
        mean: f64,
        #[arg(long, default_value = "uniform", value_parser = ["uniform", "tent"])]
        kernel: String,
        /// Also print growth rates at these adhesion strengths.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
    },
}

fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("runs"))
}

fn resolve(flags: &RunFlags) -> Result<RunConfig> {
    let mut config = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    config.apply(&Overrides {
        alpha: flags.alpha,
        bc: flags.bc,
        beta: flags.beta,
        seed: flags.seed,
        out: None,
        t_final: flags.tf,
        tol: flags.tol,
    });
    config.validate()?;
    Ok(config)
}

fn run(flags: RunFlags) -> Result<()> {
    let config = resolve(&flags)?;
    let dir = flags
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| output_root().join(config.label()));
    let outcome = run_to_dir(&config, &dir).with_context(|| format!("run {}", config.label()))?;
    let m = &outcome.manifest;
    let last = outcome.final_state();
    println!("wrote {}", dir.display());
    println!(
        "t = {}  peaks = {}  half-peaks = {}  min = {:.3e}  max = {:.6}  steps = {}",
        last.t,
        outcome.census.count,
        outcome.census.half_peaks(),
        last.min(),
        last.max(),
        m.stats.as_ref().map_or(0, |s| s.accepted_steps)
    );
    Ok(())
}

fn run_sweep(flags: RunFlags, alphas: Vec<f64>, seeds: Vec<u64>) -> Result<()> {
    let mut base = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    base.apply(&Overrides { bc: flags.bc, beta: flags.beta, t_final: flags.tf, tol: flags.tol, ..Default::default() });
    let root = flags.out.clone().or_else(|| base.output_dir.clone()).unwrap_or_else(output_root);
    let index = sweep(&base, &alphas, &seeds, &root)?;
    print!("{}", adhesion_cli::sweep::summary_csv(&index));
    if index.failures() > 0 {
        bail!("{} of {} runs failed", index.failures(), index.entries.len());
    }
    Ok(())
}

fn validate(bc: BcKind, length: f64, radius: f64) -> Result<()> {
    let beta = match bc {
        BcKind::Adhesive => 2.0,
        BcKind::Repulsive => -1.0,
        _ => 0.0,
    };
    let domain = SamplingDomain::new(bc.boundary_kind(), length, radius, beta, beta)?;
    let n = ((length / radius).ceil() as usize).max(1) * SAMPLES_PER_RADIUS;
    let report = validate_suitable(&domain, n);
    println!("domain: {} (L = {length}, R = {radius})", bc.name());
    println!("suitable: {}", report.is_suitable());
    println!("no-flux capable: {}", report.no_flux_capable);
    for v in &report.violations {
        println!("violation: {v}");
    }
    if !report.is_suitable() {
        bail!("domain is not suitable");
    }
    Ok(())
}

fn dispersion(
    modes: usize,
    length: f64,
    radius: f64,
    diffusion: f64,
    mean: f64,
    kernel: &str,
    alphas: &[f64],
) -> Result<()> {
    let omega = if kernel == "tent" { OmegaKind::Tent } else { OmegaKind::Uniform };
    let kernel = InteractionKernel::new(omega, radius, adhesion_core::AdhesionFn::Identity)?;
    println!("n,k,alpha_n");
    for n in 1..=modes {
        let k = mode_wavenumber(n, length);
        match bifurcation_alpha(n, length, diffusion, mean, &kernel) {
            Ok(a) => println!("{n},{k:.16e},{a:.16e}"),
            Err(e) => println!("{n},{k:.16e},none ({e})"),
        }
    }
    for &alpha in alphas {
        println!();
        println!("alpha = {alpha}");
        println!("n,k,lambda");
        for n in 1..=modes {
            let k = mode_wavenumber(n, length);
            println!("{n},{k:.16e},{:.16e}", growth_rate(k, alpha, diffusion, mean, &kernel));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(flags) => run(flags),
        Command::Sweep { flags, alphas, seeds } => run_sweep(flags, alphas, seeds),
        Command::Validate { bc, length, radius } => validate(bc, length, radius),
        Command::Dispersion { modes, length, radius, diffusion, mean, kernel, alphas } => {
            dispersion(modes, length, radius, diffusion, mean, &kernel, &alphas)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
