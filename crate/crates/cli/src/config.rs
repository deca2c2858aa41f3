//! Key-value configuration files: one `key = value` per line, `#` starts a
//! comment. Values from flags override the file, which overrides defaults.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

pub const KEYS: &[&str] = &["p", "c", "k", "m_max", "tol", "seed", "samples", "format", "execution"];

#[derive(Clone, Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, String> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let key = k.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", lineno + 1));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        FileConfig::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| format!("config key `{key}`: cannot parse `{v}`")),
        }
    }

    /// flag, else file, else `None`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, String> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dashes() {
        let c = FileConfig::parse("# run\np = 5\nm-max = 3 # inline\n\n").unwrap();
        assert_eq!(c.get::<u32>("p").unwrap(), Some(5));
        assert_eq!(c.get::<i64>("m_max").unwrap(), Some(3));
        assert_eq!(c.get::<u32>("c").unwrap(), None);
    }

    #[test]
    fn flags_take_precedence() {
        let c = FileConfig::parse("p = 5").unwrap();
        assert_eq!(c.pick(Some(3u32), "p").unwrap(), Some(3));
        assert_eq!(c.pick(None::<u32>, "p").unwrap(), Some(5));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(FileConfig::parse("prime = 3").is_err());
        assert!(FileConfig::parse("just words").is_err());
        assert!(FileConfig::parse("p = x").unwrap().get::<u32>("p").is_err());
    }
}
