mod config;
mod render;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, Format, RunConfig};
use report::Outcome;

const EXIT_USAGE: u8 = 2;

fn run(cfg: &RunConfig) -> Result<Outcome, String> {
    let e = |e: cantorval::Error| e.to_string();
    let n = cfg.depth;
    match &cfg.command {
        Command::CentralClassify { a, b, budget } => report::central_classify(a, b, *budget, n, cfg.format).map_err(e),
        Command::ScantorClassify { p1, p2 } => report::scantor_classify(p1, p2, cfg.format).map_err(e),
        Command::ScantorSweep { p_max } => report::scantor_sweep(*p_max),
        Command::VerifyScantor { p1, p2 } => report::verify_scantor(p1, p2, n, cfg.format).map_err(e),
        Command::VerifyCentral { a, b, budget } => report::verify_central(a, b, *budget, n, cfg.format).map_err(e),
        Command::Render { set } => {
            let body = match cfg.format {
                Format::Csv => render::csv(set, n),
                _ => render::svg(set, n),
            };
            body.map(|body| Outcome { body, code: 0 }).map_err(e)
        }
    }
}

fn emit(cfg: &RunConfig, body: &str) -> std::io::Result<()> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cfg = match RunConfig::from_cli(Cli::parse()) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(err) = emit(&cfg, &outcome.body) {
        eprintln!("error: cannot write report: {err}");
        return ExitCode::FAILURE;
    }
    ExitCode::from(outcome.code)
}
