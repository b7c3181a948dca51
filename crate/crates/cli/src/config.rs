//! Settings shared by every subcommand, layered as built-in defaults, then
//! a key-value config file, then environment variables, then flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(CliError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub cache_dir: Option<PathBuf>,
    pub nvars: usize,
    /// `None` means "pick a bound from the shape".
    pub max_deg: Option<u32>,
    pub jobs: usize,
    pub format: Format,
    pub seed: u64,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            cache_dir: None,
            nvars: 3,
            max_deg: None,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            format: Format::Text,
            seed: 0,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| CliError::Usage(format!("invalid value {value:?} for {key}")))
}

fn positive_jobs(key: &str, value: &str) -> Result<usize, CliError> {
    match parse_value::<usize>(key, value)? {
        0 => Err(CliError::Usage(format!("{key} must be at least 1"))),
        n => Ok(n),
    }
}

impl CliConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &Path) -> Result<(), CliError> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("{}:{}: expected key = value", origin.display(), no + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "cache_dir" => self.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value)),
                "nvars" => self.nvars = parse_value(key, value)?,
                "max_deg" => self.max_deg = Some(parse_value(key, value)?),
                "jobs" => self.jobs = positive_jobs(key, value)?,
                "format" => self.format = value.parse()?,
                "seed" => self.seed = parse_value(key, value)?,
                other => {
                    return Err(CliError::Usage(format!("{}:{}: unknown key {other:?}", origin.display(), no + 1)))
                }
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input { path: path.to_path_buf(), source: e })?;
        self.apply_text(&text, path)
    }

    /// Reads `KSHIFT_CACHE_DIR` and `KSHIFT_JOBS` through `lookup`.
    pub fn apply_env(&mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<(), CliError> {
        if let Some(dir) = lookup("KSHIFT_CACHE_DIR").filter(|d| !d.is_empty()) {
            self.cache_dir = Some(PathBuf::from(dir));
        }
        if let Some(jobs) = lookup("KSHIFT_JOBS").filter(|j| !j.is_empty()) {
            self.jobs = positive_jobs("KSHIFT_JOBS", &jobs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_keys_and_comments() {
        let mut c = CliConfig::default();
        c.apply_text("# settings\nnvars = 5\nmax_deg=7 # trailing\nformat = json\njobs = 2\nseed = 11\ncache_dir = /tmp/k\n", Path::new("cfg"))
            .unwrap();
        assert_eq!(c.nvars, 5);
        assert_eq!(c.max_deg, Some(7));
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.jobs, 2);
        assert_eq!(c.seed, 11);
        assert_eq!(c.cache_dir, Some(PathBuf::from("/tmp/k")));
    }

    #[test]
    fn rejects_bad_lines() {
        let mut c = CliConfig::default();
        assert!(c.apply_text("nvars", Path::new("cfg")).is_err());
        assert!(c.apply_text("colour = red", Path::new("cfg")).is_err());
        assert!(c.apply_text("jobs = 0", Path::new("cfg")).is_err());
        assert!(c.apply_text("nvars = -1", Path::new("cfg")).is_err());
    }

    #[test]
    fn environment_overrides_file() {
        let mut c = CliConfig::default();
        c.apply_text("jobs = 2\ncache_dir = /a", Path::new("cfg")).unwrap();
        c.apply_env(|k| match k {
            "KSHIFT_JOBS" => Some("3".into()),
            "KSHIFT_CACHE_DIR" => Some("/b".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!(c.jobs, 3);
        assert_eq!(c.cache_dir, Some(PathBuf::from("/b")));
        assert!(c.apply_env(|_| Some("0".into())).is_err());
    }
}
