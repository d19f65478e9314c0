mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Output;
use crate::config::{ConfigError, Format, RunConfig, Settings, SEED_ENV};

const EXIT_CONFIG: u8 = 2;

/// Distance between two planar random flights: evaluate its distribution
/// function, check it against simulation, or draw samples.
#[derive(Parser, Debug)]
#[command(name = "flightdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print r,phi,abs_error,regime for each grid point.
    Eval,
    /// Continuity, component-sum and Monte Carlo checks; exit 1 on failure.
    Validate,
    /// Empirical distribution function of simulated distances.
    Sample {
        /// Dump the raw distances instead of the empirical CDF.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Args, Debug)]
struct Opts {
    /// Flat key = value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the resolved configuration in file format and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[arg(long, global = true)]
    c1: Option<f64>,
    #[arg(long, global = true)]
    c2: Option<f64>,
    #[arg(long, global = true)]
    lambda1: Option<f64>,
    #[arg(long, global = true)]
    lambda2: Option<f64>,
    #[arg(long, global = true)]
    t: Option<f64>,
    /// Radius to evaluate at; repeat for several.
    #[arg(long, global = true)]
    r: Vec<f64>,
    /// Number of equally spaced radii on [0, (c1+c2)t].
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Tolerance for double integrals (single integrals use tol/100).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    mc_n: Option<usize>,
    #[arg(long, global = true, env = SEED_ENV)]
    seed: Option<u64>,
    /// Significance level of the DKW band.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_parser = ["csv"])]
    format: Option<String>,
}

impl Opts {
    fn settings(&self) -> Settings {
        Settings {
            c1: self.c1,
            c2: self.c2,
            lambda1: self.lambda1,
            lambda2: self.lambda2,
            t: self.t,
            r: (!self.r.is_empty()).then(|| self.r.clone()),
            grid_n: self.grid_n,
            tol: self.tol,
            mc_n: self.mc_n,
            seed: self.seed,
            alpha: self.alpha,
            out: self.out.clone(),
            format: self.format.as_ref().map(|_| Format::Csv),
        }
    }
}

fn load(opts: &Opts) -> Result<RunConfig, ConfigError> {
    let file = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            Settings::parse(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?
        }
        None => Settings::default(),
    };
    // Flags and the seed variable both arrive through clap, which already
    // ranks a flag above the variable.
    file.overlay(opts.settings()).resolve()
}

fn emit(cfg: &RunConfig, out: &Output) -> Result<(), String> {
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{}", out.text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli.opts) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if cli.opts.dump_config {
        print!("{}", cfg.dump());
        return ExitCode::SUCCESS;
    }
    let out = match cli.command {
        Command::Eval => commands::eval(&cfg),
        Command::Validate => commands::validate(&cfg),
        Command::Sample { raw } => match commands::sample(&cfg, raw) {
            Ok(out) => out,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
        },
    };
    if let Err(e) = emit(&cfg, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_CONFIG);
    }
    ExitCode::from(out.status.code())
}
