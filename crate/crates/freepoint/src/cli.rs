//! Argument parsing and dispatch for the `freepoint` binary.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use freepoint_core::search::{SearchConfig, DEFAULT_BUDGET, DEFAULT_MAX_EXPONENT};

use crate::commands::{self, Outcome};
use crate::json::parse_strategy;
use crate::manifest::{envelope, RunManifest};
use crate::parallel::with_threads;
use crate::{exit, Failure};

#[derive(Parser, Debug)]
#[command(name = "freepoint", version, about = "Free points, hypersurface censuses and exact bound checks over finite fields")]
pub struct Cli {
    /// Worker threads; affects wall time only.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// `path = value` lines rendered from the JSON payload.
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Certify the six built-in witness points.
    VerifyExceptional {
        /// `all` or a case number 1..=6.
        #[arg(long, default_value = "all")]
        case: String,
        /// Directory with case1.json … case6.json replacing the embedded fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Search P^n(F_{q^m}) for a point free for degree d.
    FindFreePoint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u128,
        /// exhaustive, sweep or random.
        #[arg(long, default_value = "sweep")]
        strategy: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPONENT)]
        max_exponent: u64,
        /// Count all free points instead of stopping at the first.
        #[arg(long)]
        count: bool,
        /// Tower JSON for F_{q^m}; defaults to the witness tower of a
        /// matching built-in case, else the first primitive modulus.
        #[arg(long)]
        tower: Option<PathBuf>,
    },
    /// Classify every degree-d hypersurface over F_q.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u128,
        /// Skip the reducibility test over extensions.
        #[arg(long)]
        no_geometric: bool,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
    },
    /// Exact checks of the counting inequalities.
    Bounds {
        /// Ranges `NS DS QS`, each `a:b` or `a,b,c`.
        #[arg(long, num_args = 3, value_names = ["NS", "DS", "QS"])]
        grid: Option<Vec<String>>,
        /// Ranges for the q > d degree check.
        #[arg(long, num_args = 3, value_names = ["NS", "DS", "QS"])]
        qd_grid: Option<Vec<String>>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// Include every check and quantity for each grid point.
        #[arg(long)]
        detail: bool,
    },
    /// The lower-order-term estimate and the final counting chain.
    ClaimChain {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
    },
    /// All-reducible and all-irreducible linear systems.
    Linsys {
        #[command(subcommand)]
        action: LinsysCommand,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinsysCommand {
    Build {
        /// red or irr.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u128,
        #[arg(long, default_value = "sweep")]
        strategy: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_EXPONENT)]
        max_exponent: u64,
    },
    Verify {
        #[arg(long)]
        system: PathBuf,
        /// reducible or irreducible.
        #[arg(long)]
        expect: String,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
    },
    /// Exact size of the reducible locus by product enumeration.
    Locus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u128,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
    },
    Intersect {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyExceptional { .. } => "verify-exceptional",
        Command::FindFreePoint { .. } => "find-free-point",
        Command::Census { .. } => "census",
        Command::Bounds { .. } => "bounds",
        Command::ClaimChain { .. } => "claim-chain",
        Command::Linsys { action } => match action {
            LinsysCommand::Build { .. } => "linsys build",
            LinsysCommand::Verify { .. } => "linsys verify",
            LinsysCommand::Locus { .. } => "linsys locus",
            LinsysCommand::Intersect { .. } => "linsys intersect",
        },
    }
}

fn search_config(strategy: &str, seed: u64, budget: u128, max_exponent: u64) -> Result<SearchConfig, Failure> {
    Ok(SearchConfig { strategy: parse_strategy(strategy)?, seed, budget, max_exponent })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::VerifyExceptional { case, fixtures } => {
            commands::verify_exceptional(&commands::parse_cases(case)?, fixtures.as_deref())
        }
        Command::FindFreePoint { n, d, q, strategy, budget, max_exponent, count, tower } => {
            let config = search_config(strategy, cli.seed, *budget, *max_exponent)?;
            let tower = tower.as_deref().map(commands::read_tower).transpose()?;
            commands::find_free_point(*n, *d, *q, config, *count, tower)
        }
        Command::Census { n, d, q, no_geometric, budget } => commands::census(*n, *d, *q, !no_geometric, *budget),
        Command::Bounds { grid, qd_grid, n, d, q, detail } => match (grid, qd_grid, n, d, q) {
            (Some(g), None, None, None, None) => commands::bounds_grid(
                &commands::parse_list(&g[0])?,
                &commands::parse_list(&g[1])?,
                &commands::parse_list(&g[2])?,
                *detail,
            ),
            (None, Some(g), None, None, None) => commands::qd_grid(
                &commands::parse_list(&g[0])?,
                &commands::parse_list(&g[1])?,
                &commands::parse_list(&g[2])?,
            ),
            (None, None, Some(n), Some(d), Some(q)) => commands::bounds_point(*n, *d, *q),
            _ => Err(Failure::input("bounds needs exactly one of --grid, --qd-grid or --n/--d/--q")),
        },
        Command::ClaimChain { n, d, q } => commands::claim_chain(*n, *d, *q),
        Command::Linsys { action } => match action {
            LinsysCommand::Build { kind, n, d, q, strategy, budget, max_exponent } => {
                let config = search_config(strategy, cli.seed, *budget, *max_exponent)?;
                commands::linsys_build(kind, *n, *d, *q, config)
            }
            LinsysCommand::Verify { system, expect, budget } => {
                let s = commands::read_system(system)?;
                commands::linsys_verify(&s, commands::parse_expectation(expect)?, *budget)
            }
            LinsysCommand::Locus { n, d, q, budget } => commands::linsys_locus(*n, *d, *q, *budget),
            LinsysCommand::Intersect { a, b } => {
                commands::linsys_intersect(&commands::read_system(a)?, &commands::read_system(b)?)
            }
        },
    }
}

/// Finished run: the full envelope and the exit code it implies.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub envelope: Value,
    pub code: u8,
}

impl RunOutput {
    pub fn payload(&self) -> &Value {
        &self.envelope["payload"]
    }
}

pub fn run(cli: &Cli) -> Result<RunOutput, Failure> {
    let start = Instant::now();
    let outcome = with_threads(cli.threads, || dispatch(cli))?;
    let params = serde_json::to_value(&cli.command)?;
    let mut manifest = RunManifest::new(subcommand_name(&cli.command), params, cli.seed, cli.threads.max(1));
    manifest.fixture_hashes = outcome.fixture_hashes;
    manifest.wall_time_ms = start.elapsed().as_millis() as u64;
    let code = if outcome.counterexample { exit::COUNTEREXAMPLE } else { exit::OK };
    Ok(RunOutput { envelope: envelope(&manifest, &outcome.payload), code })
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

pub fn render(output: &RunOutput, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.envelope).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            flatten("", output.payload(), &mut s);
            s
        }
    }
}
