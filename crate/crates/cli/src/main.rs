use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

mod args;
mod commands;
mod echo;
mod input;

use args::{Cli, Command};

/// Failure classes mapped onto process exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.into())
    }
}

pub type Outcome = Result<(), Failure>;

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `argv`, writes the config echo and runs the selected command.
pub fn run(argv: Vec<String>) -> Outcome {
    let matches = match Cli::command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => e.exit(),
    };
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .ok();
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let echo = echo::config_echo(name, sub);
    match cli.command {
        Command::Bounds(a) => commands::bounds(&a, &echo),
        Command::Homology(a) => commands::homology(&a, &echo),
        Command::Train(a) => commands::train(&a, &echo),
        Command::Analyze(a) => commands::analyze(&a, &echo),
        Command::Sweep(a) => commands::sweep(&a, cli.jobs, &echo),
        Command::Cover(a) => commands::cover(&a, &echo),
        Command::Replay(a) => {
            let argv = echo::replay_argv(&a.config, a.out.as_deref())?;
            run(argv)
        }
    }
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
