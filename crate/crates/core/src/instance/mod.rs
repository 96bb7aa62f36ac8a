//! Bipartite instance model: rows (elements) are clauses over signed column
//! indices, columns (sets) carry strictly positive weights.
//!
//! The same structure serves both the matching and the covering views:
//! a unate instance is an `mRows x nCols` 0/1 incidence matrix, a binate
//! instance additionally holds negated literals.

mod cnf;
mod orlib;
mod stats;

pub use cnf::{parse_cnf, write_cnf, ParseError};
pub use orlib::{ingest_orlib, OrlibError, OrlibWeights};
pub use stats::{compute_stats, to_incidence_matrix, IncidenceMatrix, InstanceStats};

use serde::Serialize;
use thiserror::Error;

/// Signed column reference; `-j` is the negated literal of column `j`.
pub type Literal = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Unit,
    Weighted,
}

impl WeightKind {
    /// File extension used for this kind (`cnfU` / `cnfW`).
    pub fn extension(self) -> &'static str {
        match self {
            WeightKind::Unit => "cnfU",
            WeightKind::Weighted => "cnfW",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("instance must have at least one column")]
    NoColumns,
    #[error("instance must have at least one row")]
    NoRows,
    #[error("row {row}: empty clause")]
    EmptyClause { row: usize },
    #[error("row {row}: literal {literal} outside 1..={n_cols}")]
    LiteralOutOfRange {
        row: usize,
        literal: i64,
        n_cols: usize,
    },
    #[error("row {row}: column {column} appears more than once")]
    DuplicateLiteral { row: usize, column: usize },
    #[error("expected {expected} column weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("column {column}: weight {weight} is not strictly positive")]
    NonPositiveWeight { column: usize, weight: f64 },
    #[error("instance {name} is binate: unate required")]
    UnateRequired { name: String },
}

/// An `mRows x nCols` unate or binate incidence structure with column weights.
///
/// Rows and columns are 1-based in literals and in file formats, 0-based in
/// every accessor. Literals within a clause are kept in ascending `|index|`
/// order so that structurally equal instances compare equal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BigraphInstance {
    name: String,
    n_cols: usize,
    rows: Vec<Vec<Literal>>,
    col_weights: Vec<f64>,
    weight_kind: WeightKind,
}

impl BigraphInstance {
    /// Unit-weight instance.
    pub fn unit(
        name: impl Into<String>,
        n_cols: usize,
        rows: Vec<Vec<Literal>>,
    ) -> Result<Self, InstanceError> {
        Self::build(name.into(), n_cols, rows, vec![1.0; n_cols], WeightKind::Unit)
    }

    /// Instance with explicit column weights (one per column).
    pub fn weighted(
        name: impl Into<String>,
        n_cols: usize,
        rows: Vec<Vec<Literal>>,
        col_weights: Vec<f64>,
    ) -> Result<Self, InstanceError> {
        Self::build(name.into(), n_cols, rows, col_weights, WeightKind::Weighted)
    }

    fn build(
        name: String,
        n_cols: usize,
        mut rows: Vec<Vec<Literal>>,
        col_weights: Vec<f64>,
        weight_kind: WeightKind,
    ) -> Result<Self, InstanceError> {
        if n_cols == 0 {
            return Err(InstanceError::NoColumns);
        }
        if rows.is_empty() {
            return Err(InstanceError::NoRows);
        }
        if col_weights.len() != n_cols {
            return Err(InstanceError::WeightCount {
                expected: n_cols,
                found: col_weights.len(),
            });
        }
        for (j, &w) in col_weights.iter().enumerate() {
            // rejects NaN as well
            if !(w > 0.0 && w.is_finite()) {
                return Err(InstanceError::NonPositiveWeight {
                    column: j + 1,
                    weight: w,
                });
            }
        }
        let mut seen = vec![usize::MAX; n_cols + 1];
        for (r, clause) in rows.iter_mut().enumerate() {
            if clause.is_empty() {
                return Err(InstanceError::EmptyClause { row: r + 1 });
            }
            for &lit in clause.iter() {
                let abs = (lit as i64).unsigned_abs() as usize;
                if lit == 0 || abs > n_cols {
                    return Err(InstanceError::LiteralOutOfRange {
                        row: r + 1,
                        literal: lit as i64,
                        n_cols,
                    });
                }
                if seen[abs] == r {
                    return Err(InstanceError::DuplicateLiteral {
                        row: r + 1,
                        column: abs,
                    });
                }
                seen[abs] = r;
            }
            clause.sort_by_key(|l| l.unsigned_abs());
        }
        Ok(BigraphInstance {
            name,
            n_cols,
            rows,
            col_weights,
            weight_kind,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn m_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Literal>] {
        &self.rows
    }

    pub fn col_weights(&self) -> &[f64] {
        &self.col_weights
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weight_kind
    }

    /// Total number of literals over all clauses.
    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_unate(&self) -> bool {
        self.rows.iter().flatten().all(|&l| l > 0)
    }

    pub fn require_unate(&self) -> Result<(), InstanceError> {
        if self.is_unate() {
            Ok(())
        } else {
            Err(InstanceError::UnateRequired {
                name: self.name.clone(),
            })
        }
    }

    /// For every column (0-based), the 0-based rows containing it positively,
    /// in ascending row order.
    pub fn column_rows(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n_cols];
        for (r, clause) in self.rows.iter().enumerate() {
            for &lit in clause {
                if lit > 0 {
                    cols[lit as usize - 1].push(r);
                }
            }
        }
        cols
    }

    /// Column degrees counting both positive and negated occurrences.
    pub fn column_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_cols];
        for &lit in self.rows.iter().flatten() {
            deg[lit.unsigned_abs() as usize - 1] += 1;
        }
        deg
    }

    /// Key under which best-known values are registered, e.g. `scpb1.cnfW`.
    pub fn registry_key(&self) -> String {
        format!("{}.{}", self.name, self.weight_kind.extension())
    }

    /// Same rows, every weight replaced by 1.0.
    pub fn to_unit(&self) -> Self {
        BigraphInstance {
            name: self.name.clone(),
            n_cols: self.n_cols,
            rows: self.rows.clone(),
            col_weights: vec![1.0; self.n_cols],
            weight_kind: WeightKind::Unit,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_are_sorted_by_magnitude() {
        let inst = BigraphInstance::unit("t", 5, vec![vec![5, -2, 3]]).unwrap();
        assert_eq!(inst.rows()[0], vec![-2, 3, 5]);
    }

    #[test]
    fn rejects_bad_structure() {
        assert_eq!(
            BigraphInstance::unit("t", 0, vec![vec![1]]),
            Err(InstanceError::NoColumns)
        );
        assert_eq!(
            BigraphInstance::unit("t", 2, vec![]),
            Err(InstanceError::NoRows)
        );
        assert_eq!(
            BigraphInstance::unit("t", 2, vec![vec![1], vec![]]),
            Err(InstanceError::EmptyClause { row: 2 })
        );
        assert!(matches!(
            BigraphInstance::unit("t", 2, vec![vec![3]]),
            Err(InstanceError::LiteralOutOfRange { literal: 3, .. })
        ));
        assert!(matches!(
            BigraphInstance::unit("t", 2, vec![vec![0]]),
            Err(InstanceError::LiteralOutOfRange { literal: 0, .. })
        ));
        assert_eq!(
            BigraphInstance::unit("t", 2, vec![vec![1, -1]]),
            Err(InstanceError::DuplicateLiteral { row: 1, column: 1 })
        );
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            BigraphInstance::weighted("t", 2, vec![vec![1]], vec![1.0, 0.0]),
            Err(InstanceError::NonPositiveWeight { column: 2, .. })
        ));
        assert!(matches!(
            BigraphInstance::weighted("t", 1, vec![vec![1]], vec![f64::NAN]),
            Err(InstanceError::NonPositiveWeight { .. })
        ));
        assert_eq!(
            BigraphInstance::weighted("t", 2, vec![vec![1]], vec![1.0]),
            Err(InstanceError::WeightCount {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn column_views() {
        let inst = BigraphInstance::unit("t", 3, vec![vec![1, 3], vec![-2, 3]]).unwrap();
        assert!(!inst.is_unate());
        assert_eq!(inst.column_rows(), vec![vec![0], vec![], vec![0, 1]]);
        assert_eq!(inst.column_degrees(), vec![1, 1, 2]);
        assert_eq!(inst.registry_key(), "t.cnfU");
        assert!(inst.require_unate().is_err());
    }
}
