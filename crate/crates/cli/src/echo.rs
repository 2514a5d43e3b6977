use std::fs;
use std::path::Path;

use anyhow::Context;
use clap::{ArgMatches, CommandFactory};

use crate::args::Cli;
use crate::{usage, Failure};

pub const CONFIG_FILE: &str = "config.txt";

fn long_name(command: &str, id: &str) -> Option<String> {
    let cli = Cli::command();
    let sub = cli.find_subcommand(command)?;
    let long = sub
        .get_arguments()
        .chain(cli.get_arguments())
        .find(|a| a.get_id().as_str() == id)
        .and_then(|a| a.get_long())
        .map(str::to_string);
    long
}

/// `key=value` lines for every argument that has a value, defaults included.
pub fn config_echo(command: &str, matches: &ArgMatches) -> String {
    let mut lines = vec![format!("command={command}")];
    let mut ids: Vec<&str> = matches.ids().map(|id| id.as_str()).collect();
    ids.sort_unstable();
    for id in ids {
        let Some(long) = long_name(command, id) else {
            continue;
        };
        let Ok(Some(raw)) = matches.try_get_raw(id) else {
            continue;
        };
        let values: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
        if !values.is_empty() {
            lines.push(format!("{long}={}", values.join(",")));
        }
    }
    lines.join("\n") + "\n"
}

/// Creates `out` and writes the echo into it.
pub fn write_echo(out: &Path, echo: &str) -> anyhow::Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join(CONFIG_FILE);
    fs::write(&path, echo).with_context(|| format!("writing {}", path.display()))
}

/// Rebuilds a command line from a config echo, optionally redirecting the output.
pub fn replay_argv(config: &Path, out: Option<&Path>) -> Result<Vec<String>, Failure> {
    let text = fs::read_to_string(config)
        .map_err(|e| usage(format!("cannot read {}: {e}", config.display())))?;
    let mut command = None;
    let mut flags = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", config.display(), n + 1)))?;
        match key {
            "command" => command = Some(value.to_string()),
            "out" if out.is_some() => {}
            _ => flags.push((key.to_string(), value.to_string())),
        }
    }
    let command = command.ok_or_else(|| usage(format!("{}: no command entry", config.display())))?;
    if command == "replay" {
        return Err(usage("a replay config cannot be replayed"));
    }
    let mut argv = vec!["nntopo".to_string(), command];
    for (key, value) in flags {
        argv.push(format!("--{key}"));
        argv.push(value);
    }
    if let Some(out) = out {
        argv.push("--out".into());
        argv.push(out.display().to_string());
    }
    Ok(argv)
}
