//! OR-library set-covering reader (`scp*.txt`).
//!
//! Free-format whitespace-separated integers: `m n`, then `n` column costs,
//! then for each of the `m` rows the number of covering columns followed by
//! their 1-based indices.

use thiserror::Error;

use super::{BigraphInstance, InstanceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrlibError {
    #[error("unexpected end of input while reading {what}")]
    Truncated { what: String },
    #[error("token {position}: expected a nonnegative integer, got `{token}`")]
    BadToken { position: usize, token: String },
    #[error("row {row}: covering-column count is zero")]
    EmptyRow { row: usize },
    #[error("row {row}: column index {index} outside 1..={n_cols}")]
    IndexOutOfRange {
        row: usize,
        index: u64,
        n_cols: usize,
    },
    #[error("{count} unread tokens after the last row")]
    TrailingData { count: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Whether to keep the file's column costs or override all of them with 1.0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrlibWeights {
    #[default]
    Costs,
    Unit,
}

struct Tokens<'a> {
    inner: std::iter::Enumerate<std::str::SplitWhitespace<'a>>,
}

impl<'a> Tokens<'a> {
    fn next_u64(&mut self, what: impl FnOnce() -> String) -> Result<u64, OrlibError> {
        let (pos, tok) = self
            .inner
            .next()
            .ok_or_else(|| OrlibError::Truncated { what: what() })?;
        tok.parse().map_err(|_| OrlibError::BadToken {
            position: pos + 1,
            token: tok.to_string(),
        })
    }
}

pub fn ingest_orlib(
    name: impl Into<String>,
    text: &str,
    weights: OrlibWeights,
) -> Result<BigraphInstance, OrlibError> {
    let mut toks = Tokens {
        inner: text.split_whitespace().enumerate(),
    };
    let m = toks.next_u64(|| "row count".into())? as usize;
    let n = toks.next_u64(|| "column count".into())? as usize;
    let mut costs = Vec::with_capacity(n);
    for j in 0..n {
        costs.push(toks.next_u64(|| format!("cost of column {}", j + 1))? as f64);
    }
    let mut rows = Vec::with_capacity(m);
    for r in 1..=m {
        let count = toks.next_u64(|| format!("column count of row {r}"))? as usize;
        if count == 0 {
            return Err(OrlibError::EmptyRow { row: r });
        }
        let mut clause = Vec::with_capacity(count);
        for k in 0..count {
            let idx = toks.next_u64(|| format!("entry {} of row {r}", k + 1))?;
            if idx == 0 || idx > n as u64 {
                return Err(OrlibError::IndexOutOfRange {
                    row: r,
                    index: idx,
                    n_cols: n,
                });
            }
            clause.push(idx as i32);
        }
        rows.push(clause);
    }
    let rest = toks.inner.count();
    if rest > 0 {
        return Err(OrlibError::TrailingData { count: rest });
    }
    let instance = match weights {
        OrlibWeights::Costs => BigraphInstance::weighted(name, n, rows, costs)?,
        OrlibWeights::Unit => BigraphInstance::unit(name, n, rows)?,
    };
    Ok(instance)
}
