//! Flat key-value configuration files (TOML syntax). Keys are the long flag
//! names with `-` replaced by `_`; values given on the command line win.

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::Path;
use toml::{Table, Value};

/// Keys handled by the global options rather than by a subcommand.
pub const GLOBAL_KEYS: [&str; 3] = ["seed", "out", "csv"];

pub fn load(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let table: Table = text
        .parse()
        .with_context(|| format!("config file {} is not valid key-value TOML", path.display()))?;
    for (k, v) in &table {
        if matches!(v, Value::Table(_)) {
            bail!("config key `{k}`: nested tables are not supported, the file must be flat");
        }
    }
    Ok(table)
}

/// Splits off the global keys, returning `(global, command)` tables.
pub fn split(mut table: Table) -> (Table, Table) {
    let mut global = Table::new();
    for k in GLOBAL_KEYS {
        if let Some(v) = table.remove(k) {
            global.insert(k.to_string(), v);
        }
    }
    (global, table)
}

/// Overlays the flags given on the command line onto the file values and
/// deserializes the result. Unknown file keys are rejected by the target
/// type.
pub fn merge<T>(file: Table, flags: &T) -> Result<T>
where
    T: Serialize + DeserializeOwned,
{
    let mut merged = file;
    let given = Table::try_from(flags).context("internal: flags do not serialize to a table")?;
    merged.extend(given);
    Value::Table(merged)
        .try_into()
        .map_err(|e: toml::de::Error| anyhow::anyhow!("invalid configuration: {}", e.message()))
}
