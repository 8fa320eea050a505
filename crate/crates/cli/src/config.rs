//! `--config <file>`: `key=value` lines that become default flags.
//!
//! Keys are long flag names (`leaf-size` or `leaf_size`). A key only applies
//! to subcommands that accept it, so one file can drive a whole pipeline.
//! Flags given on the command line win.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Command};
use seaidx::format::Meta;

use crate::CliError;

const GLOBAL_WITH_VALUE: [&str; 2] = ["--config", "--threads"];

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(arg) = it.next() {
        let arg = arg.to_string_lossy();
        if arg == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(PathBuf::from(path));
        }
    }
    None
}

fn subcommand_position(args: &[OsString], cmd: &Command) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy();
        if GLOBAL_WITH_VALUE.contains(&arg.as_ref()) {
            i += 2;
            continue;
        }
        if cmd.find_subcommand(arg.as_ref()).is_some() {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn given_on_command_line(args: &[OsString], long: &str) -> bool {
    let flag = format!("--{long}");
    let prefix = format!("--{long}=");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefix)
    })
}

fn truthy(value: &str) -> bool {
    matches!(value, "1" | "true" | "yes" | "on")
}

/// Returns `args` with the config file's entries inserted after the subcommand.
pub fn splice(args: Vec<OsString>, cmd: &Command) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let meta = Meta::read(&path)?;
    let Some(pos) = subcommand_position(&args, cmd) else {
        return Ok(args);
    };
    let sub = cmd
        .find_subcommand(args[pos].to_string_lossy().as_ref())
        .expect("position points at a subcommand");
    let mut extra = Vec::new();
    for (key, value) in meta.entries() {
        let long = key.replace('_', "-");
        let known_anywhere = cmd
            .get_subcommands()
            .flat_map(Command::get_arguments)
            .any(|a| a.get_long() == Some(long.as_str()));
        if !known_anywhere {
            return Err(CliError::Usage(format!(
                "{}: unknown option {key:?}",
                path.display()
            )));
        }
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(long.as_str())) else {
            continue;
        };
        if given_on_command_line(&args[pos + 1..], &long) {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            if truthy(value) {
                extra.push(OsString::from(format!("--{long}")));
            }
        } else {
            extra.push(OsString::from(format!("--{long}")));
            extra.push(OsString::from(value));
        }
    }
    let mut out = args;
    out.splice(pos + 1..pos + 1, extra);
    Ok(out)
}
