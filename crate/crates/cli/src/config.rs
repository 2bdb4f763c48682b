//! Argument parsing and the normalized run configuration.

use std::path::PathBuf;

use cantorval::central::{CentralCantor, DEFAULT_DEPTH_BUDGET};
use cantorval::digitset::DigitSet;
use cantorval::scantor::SCantorParams;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const CENTRAL_DEPTH: usize = 6;
pub const SCANTOR_DEPTH: usize = 3;
pub const RENDER_DEPTH: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "cantorval", version, about = "Classify and verify differences of Cantor sets")]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Report format (text or json for reports, csv for sweeps, svg or csv for renders).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Top,
}

#[derive(Subcommand, Debug)]
pub enum Top {
    /// Central Cantor sets given by ratio sequences.
    Central {
        #[command(subcommand)]
        cmd: CentralCmd,
    },
    /// S-Cantor sets C(l, r, p).
    Scantor {
        #[command(subcommand)]
        cmd: ScantorCmd,
    },
    /// Cross-check a classification against the brute-force oracle.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Draw the covers of a digit set, one row per depth.
    Render(RenderArgs),
}

#[derive(Subcommand, Debug)]
pub enum CentralCmd {
    /// Classify C(a) - C(b).
    Classify(CentralArgs),
}

#[derive(Subcommand, Debug)]
pub enum ScantorCmd {
    /// Classify C(l1, r1, p) - C(l2, r2, p).
    Classify(PairArgs),
    /// Classify every valid tuple with p <= p-max, as CSV.
    Sweep {
        #[arg(long)]
        p_max: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Scantor {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        depth: Option<usize>,
    },
    Central(CentralArgs),
}

#[derive(Args, Debug)]
pub struct CentralArgs {
    /// Ratio sequence "prefix;cycle", e.g. ";1/2,1/4". Without ';' the list is finite.
    pub a: String,
    pub b: String,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Periods searched when locating a failure of the interval condition.
    #[arg(long, default_value_t = DEFAULT_DEPTH_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub l1: i64,
    pub r1: i64,
    pub l2: i64,
    pub r2: i64,
    pub p: i64,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Digit set, e.g. "p=7:{-6,-5,0,5,6}".
    pub set: String,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    pub svg: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug)]
pub enum Command {
    CentralClassify { a: CentralCantor, b: CentralCantor, budget: u64 },
    ScantorClassify { p1: SCantorParams, p2: SCantorParams },
    ScantorSweep { p_max: i64 },
    VerifyScantor { p1: SCantorParams, p2: SCantorParams },
    VerifyCentral { a: CentralCantor, b: CentralCantor, budget: u64 },
    Render { set: DigitSet },
}

#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub depth: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

fn pair(args: &PairArgs) -> cantorval::Result<(SCantorParams, SCantorParams)> {
    Ok((SCantorParams::new(args.l1, args.r1, args.p)?, SCantorParams::new(args.l2, args.r2, args.p)?))
}

fn central(args: &CentralArgs) -> cantorval::Result<(CentralCantor, CentralCantor)> {
    Ok((CentralCantor::parse(&args.a)?, CentralCantor::parse(&args.b)?))
}

fn pick(requested: Option<Format>, allowed: &[Format], what: &str) -> Result<Format, String> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(format!("format {f:?} is not available for {what}")),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        use Format::*;
        let report = [Text, Json];
        let (command, depth, format) = match cli.command {
            Top::Central { cmd: CentralCmd::Classify(args) } => {
                let (a, b) = central(&args).map_err(|e| e.to_string())?;
                let f = pick(cli.format, &report, "central classify")?;
                (Command::CentralClassify { a, b, budget: args.budget }, args.depth.unwrap_or(CENTRAL_DEPTH), f)
            }
            Top::Scantor { cmd: ScantorCmd::Classify(args) } => {
                let (p1, p2) = pair(&args).map_err(|e| e.to_string())?;
                let f = pick(cli.format, &report, "scantor classify")?;
                (Command::ScantorClassify { p1, p2 }, SCANTOR_DEPTH, f)
            }
            Top::Scantor { cmd: ScantorCmd::Sweep { p_max } } => {
                if p_max < 2 {
                    return Err(format!("p-max must be at least 2, got {p_max}"));
                }
                let f = pick(cli.format, &[Csv], "scantor sweep")?;
                (Command::ScantorSweep { p_max }, SCANTOR_DEPTH, f)
            }
            Top::Verify { cmd: VerifyCmd::Scantor { pair: args, depth } } => {
                let (p1, p2) = pair(&args).map_err(|e| e.to_string())?;
                let depth = depth.unwrap_or(SCANTOR_DEPTH);
                if depth < 2 {
                    return Err("verify scantor needs depth >= 2".into());
                }
                let f = pick(cli.format, &report, "verify")?;
                (Command::VerifyScantor { p1, p2 }, depth, f)
            }
            Top::Verify { cmd: VerifyCmd::Central(args) } => {
                let (a, b) = central(&args).map_err(|e| e.to_string())?;
                let f = pick(cli.format, &report, "verify")?;
                (Command::VerifyCentral { a, b, budget: args.budget }, args.depth.unwrap_or(CENTRAL_DEPTH), f)
            }
            Top::Render(args) => {
                let set: DigitSet = args.set.parse().map_err(|e: cantorval::Error| e.to_string())?;
                set.require_bounded().map_err(|e| e.to_string())?;
                let requested = match (args.svg, args.csv) {
                    (true, _) => Some(Svg),
                    (_, true) => Some(Csv),
                    _ => cli.format,
                };
                let f = pick(requested, &[Svg, Csv], "render")?;
                (Command::Render { set }, args.depth.unwrap_or(RENDER_DEPTH), f)
            }
        };
        Ok(RunConfig { command, depth, output_path: cli.output, format })
    }
}
