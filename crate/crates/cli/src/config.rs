//! `--config file.json`: a flat object of flag values merged under the
//! command-line flags.
//!
//! Each key `k` becomes `--k <value>` inserted right after the subcommand, so
//! any flag given on the command line appears later and wins. Arrays are
//! joined with commas, `true` becomes a bare switch and `false` is dropped.

use std::ffi::OsString;

use serde_json::Value;

const SUBCOMMANDS: &[&str] = &["branch-points", "energy", "surface", "continue", "monodromy", "oracle", "single-osc"];
const NESTED: &[(&str, &str)] = &[("single-osc", "scan")];

/// Removes `--config <path>` / `--config=<path>` from `args`, returning the path.
pub fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<String>, String> {
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy().into_owned();
        if arg == "--" {
            break;
        }
        if arg == "--config" {
            if i + 1 >= args.len() {
                return Err("--config needs a file path".into());
            }
            let path = args[i + 1].to_string_lossy().into_owned();
            args.drain(i..i + 2);
            return Ok(Some(path));
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            let path = path.to_string();
            args.remove(i);
            return Ok(Some(path));
        }
        i += 1;
    }
    Ok(None)
}

fn scalar_text(value: &Value) -> Option<String> {
    match value {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Flag list for a config object.
pub fn config_flags(text: &str) -> Result<Vec<OsString>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("config is not valid JSON: {e}"))?;
    let Value::Object(map) = value else {
        return Err("config must be a JSON object".into());
    };
    let mut flags = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        let text = match &value {
            Value::Bool(true) => {
                flags.push(flag.into());
                continue;
            }
            Value::Bool(false) | Value::Null => continue,
            Value::Array(items) => items
                .iter()
                .map(scalar_text)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| format!("config key {key:?}: arrays may hold only numbers and strings"))?
                .join(","),
            other => scalar_text(other).ok_or_else(|| format!("config key {key:?}: unsupported value"))?,
        };
        flags.push(format!("{flag}={text}").into());
    }
    Ok(flags)
}

/// Inserts `flags` after the (possibly nested) subcommand in `args`.
pub fn merge(args: &mut Vec<OsString>, flags: Vec<OsString>) {
    let Some(mut at) = args.iter().position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref())) else {
        return;
    };
    let name = args[at].to_string_lossy().into_owned();
    if let Some((_, child)) = NESTED.iter().find(|(parent, _)| *parent == name) {
        if let Some(offset) = args[at + 1..].iter().position(|a| a == child) {
            at += offset + 1;
        }
    }
    args.splice(at + 1..at + 1, flags);
}
