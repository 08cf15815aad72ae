//! Command-line front end for `chabauty-core`: subgroup documents in, JSON
//! reports and CSV datasets out.

pub mod commands;
pub mod doc;
pub mod emit;
pub mod error;
pub mod num;
pub mod settings;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::doc::{read_document, read_point, Subgroup};
use crate::emit::Family;
use crate::error::{CliError, Result};
use crate::settings::{ConfigFile, Settings};

#[derive(Debug, Parser)]
#[command(name = "chabauty-lab", version, about = "Closed subgroups of C, H and Aff: invariants, charts and convergence datasets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags override the `--config` file, which overrides the defaults.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with any of the keys truncation_radius, radius, spacing,
    /// eps, seed, budget, count, schedule.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Ball radius of the Chabauty distance [default: 3].
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Sampling pitch [default: 0.05].
    #[arg(long, global = true)]
    pub spacing: Option<f64>,
    /// Acceptance threshold [default: 0.05].
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Truncation radius of the direct lattice sums [default: 100].
    #[arg(long, global = true)]
    pub truncation_radius: Option<f64>,
    /// Candidate automorphisms of the orbit walk [default: 10000].
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Rows of the trefoil (default 360) and chart-grid (default 100) datasets.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Convergence schedule `R:eps,R:eps,...` [default: radius:eps].
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    fn as_config(&self) -> ConfigFile {
        ConfigFile {
            truncation_radius: self.truncation_radius,
            radius: self.radius,
            spacing: self.spacing,
            eps: self.eps,
            seed: self.seed,
            budget: self.budget,
            count: self.count,
            schedule: self.schedule.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct Input {
    /// Document to read; standard input when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of a subgroup document.
    Invariants(Input),
    /// Stratum and orbit of a subgroup document.
    Classify(Input),
    /// Canonical form; lattices of H also get their normal form.
    Normalize(Input),
    /// Dual of a subgroup of C.
    Dual(Input),
    /// Sphere-chart coordinates of a subgroup of C or H.
    Chart(Input),
    /// Subgroup at a chart point document.
    ChartInv(Input),
    /// Write a CSV dataset.
    Emit {
        #[arg(value_enum)]
        what: Dataset,
        /// Family of the convergence dataset.
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Family indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        /// Subgroup document of an orbit-walk target, replacing the built-in targets.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Convergence trace of a family as JSON.
    Trace {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dataset {
    Trefoil,
    ChartGrid,
    OrbitWalk,
    Convergence,
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s.into_bytes()
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let settings = Settings::resolve(cli.global.as_config(), cli.global.config.as_deref())?;
    let subgroup = |i: &Input| -> Result<Subgroup> { read_document(&read_input(i.input.as_deref())?) };
    let bytes = match &cli.command {
        Command::Invariants(i) => json(&commands::invariants(&subgroup(i)?, &settings)?),
        Command::Classify(i) => json(&commands::classify(&subgroup(i)?)),
        Command::Normalize(i) => json(&commands::normalize(&subgroup(i)?)?),
        Command::Dual(i) => json(&commands::dual(&subgroup(i)?)?),
        Command::Chart(i) => json(&commands::chart(&subgroup(i)?)?),
        Command::ChartInv(i) => json(&commands::chart_inverse(&read_point(&read_input(i.input.as_deref())?)?)?),
        Command::Trace { family, indices } => json(&emit::trace(*family, indices.clone(), &settings)?),
        Command::Emit {
            what,
            family,
            indices,
            target,
        } => match what {
            Dataset::Trefoil => emit::trefoil(&settings)?,
            Dataset::ChartGrid => emit::chart_grid(&settings)?,
            Dataset::OrbitWalk => {
                let targets = match target {
                    Some(p) => {
                        let h = read_document(&read_input(Some(p))?)?
                            .as_h()
                            .ok_or_else(|| CliError::schema("orbit-walk targets are subgroups of H"))?;
                        vec![("custom".to_string(), h)]
                    }
                    None => emit::walk_targets()?.into_iter().map(|(n, h)| (n.to_string(), h)).collect(),
                };
                emit::orbit_walk(&targets, &settings)?
            }
            Dataset::Convergence => {
                let family = family.ok_or_else(|| CliError::schema("emit convergence needs --family"))?;
                emit::convergence(&emit::trace(family, indices.clone(), &settings)?)?
            }
        },
    };
    write_output(cli.global.out.as_deref(), &bytes)
}
