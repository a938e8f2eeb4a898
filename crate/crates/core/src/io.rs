//! Reading and writing realizations.
//!
//! JSON: `{"ambient_rank": D, "relations": [[..]], "generators": [[..]]}`,
//! with `relations` optional. Shorthand: a whitespace-separated integer
//! matrix whose columns are the generators (no relations). Blank lines and
//! lines starting with `#` are ignored.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use thiserror::Error;

use crate::zmatroid::{Realization, RealizationError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {0} is not an integer")]
    NotInteger(String),
    #[error("line {line}: {message}")]
    Shorthand { line: usize, message: String },
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationFile {
    pub ambient_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<Number>>>,
    pub generators: Vec<Vec<Number>>,
}

fn to_bigint(n: &Number) -> Result<BigInt, InputError> {
    if let Some(i) = n.as_i64() {
        Ok(BigInt::from(i))
    } else if let Some(u) = n.as_u64() {
        Ok(BigInt::from(u))
    } else {
        Err(InputError::NotInteger(n.to_string()))
    }
}

fn to_vectors(rows: &[Vec<Number>]) -> Result<Vec<Vec<BigInt>>, InputError> {
    rows.iter().map(|row| row.iter().map(to_bigint).collect()).collect()
}

fn to_numbers(rows: &[Vec<BigInt>]) -> Vec<Vec<Number>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    i64::try_from(x)
                        .map(Number::from)
                        .unwrap_or_else(|_| x.to_string().parse().expect("integer literal"))
                })
                .collect()
        })
        .collect()
}

impl RealizationFile {
    pub fn to_realization(&self) -> Result<Realization, InputError> {
        let relations = to_vectors(self.relations.as_deref().unwrap_or(&[]))?;
        let generators = to_vectors(&self.generators)?;
        Ok(Realization::new(self.ambient_rank, &relations, generators)?)
    }

    pub fn from_realization(r: &Realization) -> Self {
        let relations = r.relations().basis_vectors();
        RealizationFile {
            ambient_rank: r.ambient_rank(),
            relations: (!relations.is_empty()).then(|| to_numbers(&relations)),
            generators: to_numbers(r.generators()),
        }
    }
}

/// Parses the matrix shorthand.
pub fn parse_shorthand(text: &str) -> Result<Realization, InputError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>().map_err(|_| InputError::Shorthand {
                    line: i + 1,
                    message: format!("`{tok}` is not an integer"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(InputError::Shorthand {
                    line: i + 1,
                    message: format!("expected {} entries, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    let d = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let generators = (0..n).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
    Ok(Realization::new(d, &[], generators)?)
}

/// JSON if the first non-blank character is `{`, shorthand otherwise.
pub fn parse_realization(text: &str) -> Result<Realization, InputError> {
    if text.trim_start().starts_with('{') {
        let file: RealizationFile = serde_json::from_str(text)?;
        file.to_realization()
    } else {
        parse_shorthand(text)
    }
}

pub fn to_json(r: &Realization) -> String {
    serde_json::to_string(&RealizationFile::from_realization(r)).expect("plain data serializes")
}
