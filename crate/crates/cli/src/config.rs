//! Command-line grammar and the validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpgeom::inequalities::tau_grid;
use lpgeom::OperatorParams;

use crate::error::{CliError, CliResult};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LPGEOM_THREADS";

#[derive(Parser, Debug)]
#[command(name = "lpgeom", version, about = "Nonsymmetric L_p projection and moment bodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Sphere grid resolution (polar rings; at least 8).
    #[arg(long, global = true, default_value_t = 64)]
    pub resolution: usize,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply one operator to a body.
    Op {
        #[arg(value_enum)]
        operation: Operation,
        #[command(flatten)]
        body: BodyArgs,
        /// Steiner direction as comma-separated coordinates (default e_n).
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<Vector>,
        /// Rings of the disk grid used by sampled Steiner symmetrization.
        #[arg(long, default_value_t = lpgeom::symmetrization::DEFAULT_DISK_RESOLUTION)]
        disk_resolution: usize,
    },
    /// Check inequalities and identities, writing one report per check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        body: BodyArgs,
        /// Star body for the duality identity (default: the body itself).
        #[arg(long)]
        star: Option<PathBuf>,
        /// Steiner direction for the inclusion check (default e_n).
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<Vector>,
        /// Highest harmonic degree for the multiplier check.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Grid resolution of the inclusion check (default: the run
        /// resolution for polytopes, at most 24 otherwise).
        #[arg(long)]
        inclusion_resolution: Option<usize>,
    },
    /// Volume functional over a τ grid.
    Sweep {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        body: BodyArgs,
        /// τ grid: a node count, `start:end:count`, or a comma-separated list.
        #[arg(long, default_value = "21", allow_hyphen_values = true)]
        taus: String,
    },
    /// Random Steiner symmetrization flow.
    Flow {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 60)]
        steps: usize,
        #[arg(long, default_value_t = lpgeom::symmetrization::DEFAULT_DISK_RESOLUTION)]
        disk_resolution: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BodyArgs {
    /// JSON body descriptor.
    #[arg(long)]
    pub body: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tau: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    PiTau,
    MTau,
    Polar,
    Steiner,
    Santalo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Petty,
    Centroid,
    Santalo,
    Durch,
    SteinerInclusion,
    ClassReduction,
    Multipliers,
    Limits,
    All,
}

impl Check {
    pub const EACH: [Check; 8] = [
        Check::Petty,
        Check::Centroid,
        Check::Santalo,
        Check::Durch,
        Check::SteinerInclusion,
        Check::ClassReduction,
        Check::Multipliers,
        Check::Limits,
    ];

    pub fn needs_body(self) -> bool {
        self != Check::Multipliers
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pi,
    M,
}

/// Comma-separated coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(pub Vec<f64>);

impl FromStr for Vector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Vector)
    }
}

/// Parameter `τ`: a single value or an ascending grid.
#[derive(Clone, Debug, PartialEq)]
pub enum TauSpec {
    Single(f64),
    Grid(Vec<f64>),
}

impl TauSpec {
    pub fn parse_grid(s: &str) -> CliResult<Self> {
        let s = s.trim();
        let bad = |why: &str| CliError::config(format!("bad tau grid {s:?}: {why}"));
        let taus = if let Ok(count) = s.parse::<usize>() {
            if count < 2 {
                return Err(bad("need at least two nodes"));
            }
            tau_grid(count)
        } else if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(bad("expected start:end:count"));
            }
            let a: f64 = parts[0].parse().map_err(|_| bad("start"))?;
            let b: f64 = parts[1].parse().map_err(|_| bad("end"))?;
            let m: usize = parts[2].parse().map_err(|_| bad("count"))?;
            if m < 2 {
                return Err(bad("need at least two nodes"));
            }
            (0..m).map(|i| a + (b - a) * i as f64 / (m - 1) as f64).collect()
        } else {
            s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad(t))).collect::<CliResult<Vec<_>>>()?
        };
        if taus.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(bad("nodes must be strictly increasing"));
        }
        Ok(TauSpec::Grid(taus))
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            TauSpec::Single(t) => vec![*t],
            TauSpec::Grid(g) => g.clone(),
        }
    }
}

/// Settings shared by all commands, validated before any work starts.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub bodies: Vec<PathBuf>,
    pub p: f64,
    pub tau: TauSpec,
    pub resolution: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        let (command, body, tau, format, needs_body) = match &cli.command {
            Command::Op { operation, body, .. } => {
                let name = operation.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
                (format!("op {name}"), body, TauSpec::Single(body.tau), Format::Json, true)
            }
            Command::Verify { check, body, .. } => {
                let name = check.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
                (format!("verify {name}"), body, TauSpec::Single(body.tau), Format::Json, check.needs_body())
            }
            Command::Sweep { family, body, taus } => {
                let name = if *family == Family::Pi { "pi" } else { "m" };
                (format!("sweep {name}"), body, TauSpec::parse_grid(taus)?, Format::Csv, true)
            }
            Command::Flow { body, .. } => ("flow".to_string(), body, TauSpec::Single(body.tau), Format::Csv, true),
        };
        let mut bodies: Vec<PathBuf> = body.body.iter().cloned().collect();
        if let Command::Verify { star: Some(s), .. } = &cli.command {
            bodies.push(s.clone());
        }
        if needs_body && body.body.is_none() {
            return Err(CliError::config(format!("{command} needs --body")));
        }
        let cfg = RunConfig {
            command,
            bodies,
            p: body.p,
            tau,
            resolution: cli.resolution,
            seed: cli.seed,
            output: cli.out.clone(),
            format: cli.format.unwrap_or(format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.resolution < 8 {
            return Err(CliError::config(format!("resolution must be at least 8, got {}", self.resolution)));
        }
        for t in self.tau.values() {
            OperatorParams::new(self.p, t)?;
        }
        Ok(())
    }

    /// Operator parameters for single-τ commands.
    pub fn params(&self) -> CliResult<OperatorParams> {
        let tau = match &self.tau {
            TauSpec::Single(t) => *t,
            TauSpec::Grid(_) => return Err(CliError::config("command takes a single tau")),
        };
        Ok(OperatorParams::new(self.p, tau)?)
    }
}

/// Thread count from [`THREADS_ENV`], if set.
pub fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::config(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::config(format!("{THREADS_ENV}: {e}"))),
    }
}
