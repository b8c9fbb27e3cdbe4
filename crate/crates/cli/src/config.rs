use std::path::{Path, PathBuf};

use serde::Deserialize;

use chaindeck::spectrum::DEFAULT_MAX_ORDER;

pub const CONFIG_VAR: &str = "CHAINDECK_CONFIG";

/// Defaults read from the TOML file named by `CHAINDECK_CONFIG`. Flags win.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Largest `n` accepted by `spectrum`.
    pub max_order: Option<u32>,
    /// Oracle node budget.
    pub budget: Option<u64>,
    /// Directory that relative `--out` paths are resolved against.
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: Config = toml::from_str(text).map_err(|e| format!("config: {e}"))?;
        if cfg.max_order == Some(0) || cfg.budget == Some(0) {
            return Err("config: max_order and budget must be positive".into());
        }
        Ok(cfg)
    }

    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_VAR) {
            None => Ok(Config::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("config {}: {e}", Path::new(&path).display()))?;
                Config::parse(&text)
            }
        }
    }

    pub fn max_order(&self) -> u32 {
        self.max_order.unwrap_or(DEFAULT_MAX_ORDER)
    }

    pub fn output_path(&self, out: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if out.is_relative() => dir.join(out),
            _ => out.to_path_buf(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let c = Config::parse("max_order = 7\nbudget = 1000\noutput_dir = \"out\"\nseed = 3\n").unwrap();
        assert_eq!(c.max_order(), 7);
        assert_eq!(c.output_path(Path::new("d.json")), PathBuf::from("out/d.json"));
        assert_eq!(c.output_path(Path::new("/tmp/d.json")), PathBuf::from("/tmp/d.json"));
        assert_eq!(Config::parse("").unwrap(), Config::default());
        assert!(Config::parse("budget = 0").is_err());
        assert!(Config::parse("colour = 1").is_err());
    }
}
