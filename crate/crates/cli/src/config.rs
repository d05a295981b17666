//! `key = value` config files with `[section]` headers.
//!
//! Keys before any header, or under `[common]`, apply to every command;
//! keys under `[<command>]` apply to that command only. Each key is a long
//! flag name. Config values are placed before the command-line flags, so
//! flags override them.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    sections: BTreeMap<String, Vec<(String, String)>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut sections: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
        let mut current = "common".to_string();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| format!("line {}: unterminated section header", lineno + 1))?;
                current = name.trim().to_ascii_lowercase();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value'", lineno + 1))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            let value = value.trim().trim_matches('"');
            sections
                .entry(current.clone())
                .or_default()
                .push((key.replace('_', "-"), value.to_string()));
        }
        Ok(ConfigFile { sections })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Flags for `command`, common keys first.
    pub fn args_for(&self, command: &str) -> Vec<String> {
        let mut out = Vec::new();
        for section in ["common", command] {
            for (key, value) in self.sections.get(section).into_iter().flatten() {
                match value.to_ascii_lowercase().as_str() {
                    "true" => out.push(format!("--{key}")),
                    "false" => {}
                    _ => out.push(format!("--{key}={value}")),
                }
            }
        }
        out
    }
}

/// Removes `--config FILE` / `--config=FILE` from `argv` and splices the
/// file's flags in right after the subcommand.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            path = Some(it.next().ok_or("--config needs a file path")?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let config = ConfigFile::load(Path::new(&path))?;
    let Some(cmd_pos) = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|i| i + 1)
    else {
        return Err("--config needs a subcommand".into());
    };
    let extra = config.args_for(&rest[cmd_pos]);
    let mut out = rest[..=cmd_pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&rest[cmd_pos + 1..]);
    Ok(out)
}
