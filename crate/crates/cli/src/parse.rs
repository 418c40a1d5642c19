//! Input parsing: group and isogeny tokens, index assignment lists, and
//! JSON job files.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use gammaring::{IsogenySpec, RootSystemSpec};
use serde::Deserialize;

use crate::CliError;

pub fn group(s: &str) -> Result<RootSystemSpec, CliError> {
    RootSystemSpec::from_str(s).map_err(CliError::usage)
}

pub fn isogeny(s: &str) -> Result<IsogenySpec, CliError> {
    IsogenySpec::from_str(s).map_err(CliError::usage)
}

/// Splits "(1,0)=4,(0,1)=4,(1,1)=2" into class/index pairs. Commas inside
/// parentheses separate coordinates, commas outside separate entries.
pub fn index_list(s: &str) -> Result<Vec<(Vec<i64>, u64)>, CliError> {
    let mut pairs = Vec::new();
    for entry in split_entries(s) {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (key, value) = entry.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("index entry {entry:?} is not of the form (a,b)=k"))
        })?;
        let index: u64 = value.trim().parse().map_err(|_| {
            CliError::Usage(format!("index {:?} is not a positive integer", value.trim()))
        })?;
        pairs.push((tuple_key(key.trim())?, index));
    }
    Ok(pairs)
}

/// Class coordinates in invariant factor form: "(1,0)", or bare "3" for
/// cyclic class groups.
pub fn tuple_key(key: &str) -> Result<Vec<i64>, CliError> {
    let inner = key
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .unwrap_or(key);
    inner
        .split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| {
                CliError::Usage(format!("coordinate {:?} in key {key:?} is not an integer", part.trim()))
            })
        })
        .collect()
}

fn split_entries(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// On-disk job description. Index keys use the same tuple syntax as --ind.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: String,
    pub isogeny: String,
    #[serde(default)]
    pub indices: BTreeMap<String, u64>,
    #[serde(default)]
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub format: Option<String>,
}

impl JobSpec {
    pub fn pairs(&self) -> Result<Vec<(Vec<i64>, u64)>, CliError> {
        self.indices
            .iter()
            .map(|(k, &v)| Ok((tuple_key(k)?, v)))
            .collect()
    }

    /// Whether the file asks for JSON output. Unknown formats are an error.
    pub fn wants_json(&self) -> Result<bool, CliError> {
        match self.format.as_deref() {
            None | Some("text") => Ok(false),
            Some("json") => Ok(true),
            Some(other) => Err(CliError::Usage(format!(
                "unknown output format {other:?}, expected text or json"
            ))),
        }
    }
}

pub fn job_file(path: &Path) -> Result<JobSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad job file {}: {e}", path.display())))
}
