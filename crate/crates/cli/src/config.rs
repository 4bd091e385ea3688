//! Optional `KEY=VALUE` config file. Command-line flags always win;
//! environment variables are never consulted.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::Result;

fn usage_err(msg: String) -> anyhow::Error {
    anyhow::Error::new(lcd_core::Error::InvalidArgument(msg))
}

#[derive(Debug, Default)]
pub struct Config(BTreeMap<String, String>);

impl Config {
    /// Parse `key = value` lines; `#` starts a comment, blank lines are
    /// ignored. Keys are the long flag names without the leading `--`.
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| {
            usage_err(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage_err(format!(
                    "config {} line {}: expected KEY=VALUE, got `{line}`",
                    path.display(),
                    lineno + 1
                )));
            };
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse() {
                Ok(v) => Ok(Some(v)),
                Err(e) => Err(usage_err(format!(
                    "config key `{key}`: cannot parse `{raw}`: {e}"
                ))),
            },
        }
    }

    /// Optional value: flag if given, else config value, else `None`.
    pub fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Flag value if given, else config value, else the default.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    /// Flag value if given, else config value, else an error naming the flag.
    pub fn need<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.opt(flag, key)?.ok_or_else(|| {
            usage_err(format!(
                "missing required value for --{key} (flag or config file)"
            ))
        })
    }
}
