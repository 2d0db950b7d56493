//! Optional `key = value` defaults file.
//!
//! ```text
//! # comments and blank lines are ignored
//! size = 200
//! samples = 500
//! max_weight = 8
//! max_planar_weight = 12
//! threads = 1
//! ```
//!
//! Command-line flags override the file.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    pub size: Option<usize>,
    pub samples: Option<usize>,
    pub max_weight: Option<usize>,
    pub max_planar_weight: Option<usize>,
    pub threads: Option<usize>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not a nonnegative integer")]
    BadValue { line: usize, value: String },
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            let parsed: usize = value.parse().map_err(|_| ConfigError::BadValue {
                line,
                value: value.to_string(),
            })?;
            let slot = match key {
                "size" => &mut cfg.size,
                "samples" => &mut cfg.samples,
                "max_weight" => &mut cfg.max_weight,
                "max_planar_weight" => &mut cfg.max_planar_weight,
                "threads" => &mut cfg.threads,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            };
            *slot = Some(parsed);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let cfg =
            Config::parse("# defaults\nsize = 200\n\nsamples=50 # inline\nthreads = 2\n").unwrap();
        assert_eq!(cfg.size, Some(200));
        assert_eq!(cfg.samples, Some(50));
        assert_eq!(cfg.threads, Some(2));
        assert_eq!(cfg.max_weight, None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            Config::parse("size 3"),
            Err(ConfigError::Syntax { line: 1 })
        ));
        assert!(matches!(
            Config::parse("\ncolour = 3"),
            Err(ConfigError::UnknownKey { line: 2, .. })
        ));
        assert!(matches!(
            Config::parse("size = -1"),
            Err(ConfigError::BadValue { .. })
        ));
    }
}
