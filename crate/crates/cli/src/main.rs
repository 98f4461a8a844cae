use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use convhelm_cli::commands::{self, Outcome};
use convhelm_cli::config::{ConfigError, SweepConfig};
use convhelm_cli::validate;

#[derive(Parser)]
#[command(name = "convhelm", version, about = "Dispersion and FEM error sweeps for the convected Helmholtz equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase and group velocity quotients against H = w^h h.
    Quotients(SweepArgs),
    /// Leading dispersion coefficient, closed form vs extrapolated.
    #[command(name = "a1-table")]
    A1Table(SweepArgs),
    /// Energy-norm errors of plane-wave solves at w^3 h^2 = 1.
    #[command(name = "fem-errors")]
    FemErrors(SweepArgs),
    /// Run the self-check suites.
    Validate,
}

#[derive(Args)]
struct SweepArgs {
    /// key = value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Elements: p1c, rt1, rt2 (comma separated) or all.
    #[arg(long)]
    scheme: Option<String>,
    /// convected, helmholtz or all.
    #[arg(long)]
    formulation: Option<String>,
    /// Mach numbers, comma separated.
    #[arg(long)]
    mach: Option<String>,
    /// Angles, comma separated; accepts forms like pi/4.
    #[arg(long)]
    theta: Option<String>,
    /// Frequencies, comma separated.
    #[arg(long)]
    omega: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write SVG charts.
    #[arg(long)]
    svg: bool,
    /// Permit frequencies above 40.
    #[arg(long)]
    allow_large: bool,
}

impl SweepArgs {
    fn resolve(&self) -> Result<SweepConfig, ConfigError> {
        let mut cfg = SweepConfig::default();
        if let Some(p) = &self.config {
            cfg.apply_file(p)?;
        }
        for (key, value) in [
            ("scheme", &self.scheme),
            ("formulation", &self.formulation),
            ("mach", &self.mach),
            ("theta", &self.theta),
            ("omega", &self.omega),
        ] {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if let Some(o) = &self.out {
            cfg.out_dir = o.clone();
        }
        cfg.svg |= self.svg;
        cfg.allow_large |= self.allow_large;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn finish(result: anyhow::Result<Outcome>) -> ExitCode {
    match result {
        Ok(out) => {
            for n in &out.notes {
                eprintln!("note: {n}");
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run_sweep(args: &SweepArgs, f: fn(&SweepConfig) -> anyhow::Result<Outcome>) -> ExitCode {
    match args.resolve() {
        Ok(cfg) => finish(f(&cfg)),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Quotients(a) => run_sweep(a, commands::quotients),
        Command::A1Table(a) => run_sweep(a, commands::a1_table),
        Command::FemErrors(a) => run_sweep(a, |cfg| {
            convhelm_cli::sweeps::fem_sizing(cfg)?;
            commands::fem_errors(cfg)
        }),
        Command::Validate => {
            let report = validate::run_all();
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
