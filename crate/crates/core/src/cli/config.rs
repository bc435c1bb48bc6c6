//! INI configuration. Keys outside a section are top-level (`omega = 1`),
//! keys inside `[switching]` become `switching.family` and so on. Key names
//! are case-insensitive and `-` is read as `_`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

/// Drops a trailing `; ...` or `# ...` comment preceded by whitespace.
fn strip_comment(v: &str) -> &str {
    let cut = v
        .char_indices()
        .find(|&(i, c)| (c == ';' || c == '#') && v[..i].ends_with(char::is_whitespace))
        .map_or(v.len(), |(i, _)| i);
    v[..cut].trim()
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let ini = ini::Ini::load_from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let mut entries = BTreeMap::new();
        for (section, props) in ini.iter() {
            for (k, v) in props.iter() {
                let key = match section {
                    Some(s) => format!("{}.{}", normalize(s), normalize(k)),
                    None => normalize(k),
                };
                entries.insert(key, strip_comment(v).to_string());
            }
        }
        Ok(Self { entries })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize(key)).map(String::as_str)
    }

    /// Parsed value of `key`, `None` if absent.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key {key} = {v:?}: {e}"))),
        }
    }

    /// Entries under `section.`, with the prefix stripped.
    pub fn section(&self, section: &str) -> Vec<(String, String)> {
        let prefix = format!("{}.", normalize(section));
        self.entries
            .iter()
            .filter_map(|(k, v)| k.strip_prefix(&prefix).map(|k| (k.to_string(), v.clone())))
            .collect()
    }
}

/// Flag value if given, else the config entry.
pub fn merge<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_case() {
        let c = Config::parse("omega = 2\nT-KMS=3\n[switching]\nfamily = bandlimited\nA = 0.5\n").unwrap();
        assert_eq!(c.get::<f64>("omega").unwrap(), Some(2.0));
        assert_eq!(c.get::<f64>("t_kms").unwrap(), Some(3.0));
        assert_eq!(c.raw("switching.family"), Some("bandlimited"));
        assert_eq!(c.get::<f64>("switching.A").unwrap(), Some(0.5));
        assert_eq!(c.section("switching").len(), 2);
    }

    #[test]
    fn flags_win() {
        let c = Config::parse("omega = 2\n").unwrap();
        assert_eq!(merge(Some(5.0), &c, "omega").unwrap(), Some(5.0));
        assert_eq!(merge(None::<f64>, &c, "omega").unwrap(), Some(2.0));
        assert!(c.get::<f64>("omega").is_ok());
        assert!(Config::parse("omega = x\n").unwrap().get::<f64>("omega").is_err());
    }

    #[test]
    fn inline_comments() {
        let c = Config::parse("sigma = inf ; forever\nout = a;b.csv\nd = 1 # line\n").unwrap();
        assert_eq!(c.raw("sigma"), Some("inf"));
        assert_eq!(c.raw("out"), Some("a;b.csv"));
        assert_eq!(c.raw("d"), Some("1"));
    }
}
