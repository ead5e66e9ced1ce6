//! Keyed text config files and flag/file/default resolution.
//!
//! A config file holds one `key = value` pair per line, using the same keys
//! as the command-line flags (`pop`, `dim`, `budget`, `pc`, `pm`,
//! `sigma-frac`, `elite`, `runs`, `seed`, `function`, `operator`, `out`,
//! `format`). Blank lines and `#` comments are ignored. Explicit flags
//! override file values; anything still unset falls back to the defaults.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

const KNOWN_KEYS: &[&str] = &[
    "function",
    "operator",
    "pop",
    "dim",
    "budget",
    "pc",
    "pm",
    "sigma-frac",
    "elite",
    "runs",
    "seed",
    "out",
    "format",
];

/// Parsed key/value pairs from a config file.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                anyhow!("line {}: expected 'key = value', got '{raw}'", lineno + 1)
            })?;
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("line {}: unknown key '{key}'", lineno + 1);
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get(&self, key: &str) -> Option<&String> {
        self.values.get(key)
    }
}

/// Flag value if given, else file value, else default. File values that
/// fail to parse name their key.
pub fn resolve<T>(flag: Option<T>, file: &FileConfig, key: &str, default: T) -> Result<T>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get(key) {
        Some(text) => text
            .parse()
            .map_err(|e| anyhow!("config key '{key}': cannot parse '{text}': {e}")),
        None => Ok(default),
    }
}

/// Like [`resolve`], but with no default: yields `None` when neither source
/// sets the key.
pub fn resolve_opt<T>(flag: Option<T>, file: &FileConfig, key: &str) -> Result<Option<T>>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(Some(v));
    }
    match file.get(key) {
        Some(text) => text
            .parse()
            .map(Some)
            .map_err(|e| anyhow!("config key '{key}': cannot parse '{text}': {e}")),
        None => Ok(None),
    }
}
