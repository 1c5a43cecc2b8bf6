//! Run configuration: CLI flags merged over an optional TOML file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Fully resolved configuration for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Output CSV path.
    pub out: PathBuf,
    /// RNG seed for the randomized commands.
    pub seed: u64,
    /// Trial count for the fuzz command.
    pub trials: u64,
    /// Per-command grid overrides; unknown keys are rejected.
    pub grid: BTreeMap<String, String>,
}

/// Usage-level error (exit status 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Values read from a config file; flags override these.
#[derive(Debug, Default)]
pub struct FileConfig {
    /// `out` key.
    pub out: Option<PathBuf>,
    /// `seed` key.
    pub seed: Option<u64>,
    /// `trials` key.
    pub trials: Option<u64>,
    /// `[grid]` table.
    pub grid: BTreeMap<String, String>,
}

/// Parses the optional TOML config file.
pub fn load_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: toml::Value =
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let table = value
        .as_table()
        .ok_or_else(|| format!("{}: expected a table", path.display()))?;

    let mut cfg = FileConfig::default();
    for (key, v) in table {
        match key.as_str() {
            "out" => {
                cfg.out = Some(PathBuf::from(
                    v.as_str()
                        .ok_or_else(|| "config `out` must be a string".to_owned())?,
                ));
            }
            "seed" => {
                cfg.seed = Some(
                    v.as_integer()
                        .and_then(|i| u64::try_from(i).ok())
                        .ok_or_else(|| "config `seed` must be a non-negative integer".to_owned())?,
                );
            }
            "trials" => {
                cfg.trials = Some(
                    v.as_integer()
                        .and_then(|i| u64::try_from(i).ok())
                        .ok_or_else(|| {
                            "config `trials` must be a non-negative integer".to_owned()
                        })?,
                );
            }
            "grid" => {
                let grid = v
                    .as_table()
                    .ok_or_else(|| "config `grid` must be a table".to_owned())?;
                for (gk, gv) in grid {
                    let text = match gv {
                        toml::Value::String(s) => s.clone(),
                        toml::Value::Integer(i) => i.to_string(),
                        toml::Value::Float(x) => x.to_string(),
                        toml::Value::Boolean(b) => b.to_string(),
                        _ => return Err(format!("config grid key `{gk}` has an unsupported type")),
                    };
                    cfg.grid.insert(gk.clone(), text);
                }
            }
            other => return Err(format!("unknown config key `{other}`")),
        }
    }
    Ok(cfg)
}

/// Splits repeated `--grid key=value` flags into pairs.
pub fn parse_grid_flags(flags: &[String]) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for flag in flags {
        let (k, v) = flag
            .split_once('=')
            .ok_or_else(|| UsageError(format!("--grid expects key=value, got `{flag}`")))?;
        out.insert(k.trim().to_owned(), v.trim().to_owned());
    }
    Ok(out)
}

/// Typed lookups over the merged grid overrides. Construction validates
/// that every provided key is known to the command.
pub struct GridView<'a> {
    grid: &'a BTreeMap<String, String>,
}

impl<'a> GridView<'a> {
    /// Rejects unknown keys up front.
    pub fn new(
        grid: &'a BTreeMap<String, String>,
        allowed: &[&str],
    ) -> Result<GridView<'a>, UsageError> {
        for key in grid.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(UsageError(format!(
                    "unknown grid key `{key}` (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(GridView { grid })
    }

    /// Float override.
    pub fn f64(&self, key: &str, default: f64) -> Result<f64, UsageError> {
        match self.grid.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                UsageError(format!("grid key `{key}`: cannot parse `{v}` as a number"))
            }),
        }
    }

    /// Integer override.
    pub fn u64(&self, key: &str, default: u64) -> Result<u64, UsageError> {
        match self.grid.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                UsageError(format!(
                    "grid key `{key}`: cannot parse `{v}` as an integer"
                ))
            }),
        }
    }

    /// String override.
    pub fn text(&self, key: &str) -> Option<&str> {
        self.grid.get(key).map(|s| s.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_flags_split_on_equals() {
        let flags = vec!["points=20".to_owned(), "kind=tight".to_owned()];
        let grid = parse_grid_flags(&flags).unwrap();
        assert_eq!(grid["points"], "20");
        assert_eq!(grid["kind"], "tight");
        assert!(parse_grid_flags(&["oops".to_owned()]).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected_not_ignored() {
        let mut grid = BTreeMap::new();
        grid.insert("points".to_owned(), "5".to_owned());
        grid.insert("bogus".to_owned(), "1".to_owned());
        assert!(GridView::new(&grid, &["points"]).is_err());
        grid.remove("bogus");
        let view = GridView::new(&grid, &["points"]).unwrap();
        assert_eq!(view.u64("points", 49).unwrap(), 5);
        assert_eq!(view.u64("missing-but-allowed", 7).unwrap_or(7), 7);
    }
}
