//! Flat `key=value` configuration files mirroring the command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

const KEYS: &[&str] = &[
    "precision", "format", "seed", "out", "allow-p3", "tmin", "exact", "primes", "count", "m", "r0", "degree", "family",
];

/// Parsed configuration. `family` may repeat; every other key keeps its last value.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
    families: Vec<String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", n + 1)));
            }
            if key == "family" {
                cfg.families.push(value.to_string());
            } else {
                cfg.values.insert(key.to_string(), value.to_string());
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The value under `key` parsed as `T`.
    pub fn typed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| CliError::Usage(format!("config key `{key}`: invalid value `{v}`"))))
            .transpose()
    }

    pub fn families(&self) -> &[String] {
        &self.families
    }
}
