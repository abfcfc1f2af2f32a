//! `key = value` config files. Values fill only what the command line and
//! `MODINV_*` environment variables left unset.

use std::collections::BTreeMap;
use std::path::Path;

pub const KEYS: [&str; 10] = ["q", "m", "n", "k", "i", "alpha", "jobs", "json", "csv", "verbose"];

pub fn load(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let key = key.trim().to_ascii_lowercase();
        if !KEYS.contains(&key.as_str()) {
            return Err(format!("line {}: unknown key `{key}`", lineno + 1));
        }
        let value = value.trim().trim_matches('"').to_string();
        out.insert(key, value);
    }
    Ok(out)
}
