//! Flat `key = value` config files. Entries become flags placed before the
//! user's own flags, so anything given on the command line wins.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::Command;

use crate::error::CliError;

/// Parse `key = value` lines. `#` starts a comment; keys may use `_` or `-`.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", no + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", no + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Value of `--config` in `args`, if any.
pub fn find_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Rewrite `argv` so that entries from the config file precede the user's
/// flags. Keys known to another subcommand are ignored; unknown keys are an
/// error.
pub fn merge(cmd: &Command, argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = find_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    let entries = parse(&text)?;
    let Some(sub_pos) = argv.iter().position(|a| cmd.find_subcommand(a).is_some()) else {
        return Ok(argv);
    };
    let sub = cmd.find_subcommand(&argv[sub_pos]).expect("checked");

    let mut injected = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            continue;
        }
        let arg = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            let known = cmd
                .get_subcommands()
                .any(|s| s.get_arguments().any(|a| a.get_long() == Some(key.as_str())));
            if known {
                continue;
            }
            return Err(CliError::Usage(format!("unknown config key '{key}'")));
        };
        if arg.get_action().takes_values() {
            injected.push(OsString::from(format!("--{key}")));
            injected.push(OsString::from(value));
        } else {
            match value.as_str() {
                "true" | "1" | "yes" => injected.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                _ => return Err(CliError::Usage(format!("config key '{key}' expects true or false"))),
            }
        }
    }
    let mut out = argv[..=sub_pos].to_vec();
    out.extend(injected);
    out.extend_from_slice(&argv[sub_pos + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse("# header\ntemp_k = 300\n\np-cnot=0.5 # trailing\n").unwrap();
        assert_eq!(e, vec![("temp-k".into(), "300".into()), ("p-cnot".into(), "0.5".into())]);
        assert!(parse("no equals sign").is_err());
    }

    #[test]
    fn finds_config_flag() {
        let a: Vec<OsString> = ["ecred", "constants", "--config=x.cfg"].iter().map(Into::into).collect();
        assert_eq!(find_path(&a), Some("x.cfg".into()));
        let a: Vec<OsString> = ["ecred", "constants", "--config", "y"].iter().map(Into::into).collect();
        assert_eq!(find_path(&a), Some("y".into()));
    }
}
