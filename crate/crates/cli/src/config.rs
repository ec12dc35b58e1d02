//! `key=value` run files. Each key names a long flag without its dashes;
//! `true`/`false` switch boolean flags.
//!
//! ```text
//! # strong-field run
//! rho-l = 0.9
//! theta-steps = 720
//! plot = true
//! ```

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use crate::args::Command;
use crate::error::CliError;

pub fn parse_config(path: &Path, text: &str) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(l, _)| l).trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: &str| CliError::Config {
            path: path.to_path_buf(),
            line: n + 1,
            reason: reason.to_string(),
        };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected key=value"))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            return Err(err("empty key"));
        }
        if key == "config" {
            return Err(err("config files cannot include other config files"));
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Splices the config file's flags in right after the subcommand so that
/// anything on the real command line, coming later, overrides them.
pub fn expand_argv(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let extra = parse_config(&path, &text)?;
    let Some(at) = argv
        .iter()
        .position(|a| Command::NAMES.iter().any(|n| a.to_str() == Some(n)))
    else {
        // let clap report the missing subcommand
        return Ok(argv);
    };
    let mut out = argv[..=at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags_and_switches() {
        let args = parse_config(
            Path::new("x"),
            "# c\nrho_l = 0.9\nplot=true\ncheck=false\n\ntheta-steps=10 # trailing\n",
        )
        .unwrap();
        let args: Vec<String> = args.into_iter().map(|a| a.into_string().unwrap()).collect();
        assert_eq!(args, ["--rho-l", "0.9", "--plot", "--theta-steps", "10"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_config(Path::new("x"), "rho-l 0.9").is_err());
        assert!(parse_config(Path::new("x"), "config=other").is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.conf");
        std::fs::write(&p, "rho-l=0.9\n").unwrap();
        let argv: Vec<OsString> = [
            "solscat",
            "--config",
            p.to_str().unwrap(),
            "classical",
            "--rho-l",
            "0.5",
        ]
        .iter()
        .map(OsString::from)
        .collect();
        let out: Vec<String> = expand_argv(argv)
            .unwrap()
            .into_iter()
            .map(|a| a.into_string().unwrap())
            .collect();
        assert_eq!(&out[3..], ["classical", "--rho-l", "0.9", "--rho-l", "0.5"]);
    }
}
