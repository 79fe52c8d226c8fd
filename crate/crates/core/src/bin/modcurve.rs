use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modcurve::fixtures::emit_fixtures;
use modcurve::pipeline::{run, Command, Config, DEFAULT_PRECISION, DEFAULT_PRIME};
use modcurve::Error;

#[derive(Parser)]
#[command(name = "modcurve", version, about = "Exact checks on the canonical model of X0(108) and its automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical model: q-expansions, the 28 quadrics, non-trigonality
    Model(Opts),
    /// The group B0(108) generated by w4, w27, S2, S3
    Group(Opts),
    /// Groebner basis of the conditions on (a, b) and its solutions
    Solve(Opts),
    /// Relations for u, the full group, cusps, differentials
    Verify(Opts),
    /// Reduction modulo a split prime, with the fixed-point census
    Modp(Opts),
    /// Every stage in order
    All(Opts),
    /// Every stage, as JSON
    Report(Opts),
    /// Write the reference quadrics and matrices to a directory
    #[command(name = "emit-fixtures", alias = "emit")]
    EmitFixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[arg(long = "p", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    branch: usize,
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let (command, opts, force_json) = match cli.command {
        Cmd::Model(o) => (Command::Model, o, false),
        Cmd::Group(o) => (Command::Group, o, false),
        Cmd::Solve(o) => (Command::Solve, o, false),
        Cmd::Verify(o) => (Command::Verify, o, false),
        Cmd::Modp(o) => (Command::Modp, o, false),
        Cmd::All(o) => (Command::All, o, false),
        Cmd::Report(o) => (Command::All, o, true),
        Cmd::EmitFixtures { out } => {
            return match emit_fixtures(&out) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            };
        }
    };
    let config = Config { precision: opts.precision, prime: opts.prime, branch: opts.branch, seed: opts.seed };
    let outcome = match run(command, &config) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let text = if opts.json || force_json {
        outcome.report.to_json() + "\n"
    } else {
        let mut s: String = outcome.listing.iter().map(|l| format!("{l}\n")).collect();
        s.push_str(&outcome.report.to_text());
        s
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return fail(&Error::Io(format!("{}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    let failures = outcome.report.failures();
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed: {}", failures.join(", "));
        ExitCode::from(1)
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_usage() { 2 } else { 1 })
}
