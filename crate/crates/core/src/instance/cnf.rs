//! `.cnfU` / `.cnfW` reader and writer.
//!
//! ```text
//! c instance <name>          optional, sets the instance name
//! c <anything>               comment
//! p cnf <nCols> <mRows>      exactly once, before weights and clauses
//! w <colIndex> <weight>      .cnfW only, one per column, before clauses
//! <lit> <lit> ... 0          one clause per line, mRows lines
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{BigraphInstance, InstanceError, Literal, WeightKind};

const NAME_TAG: &str = "instance";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: column index {index} outside 1..={n_cols}")]
    IndexOutOfRange {
        line: usize,
        index: i64,
        n_cols: usize,
    },
    #[error("line {line}: weight {weight} for column {column} is not strictly positive")]
    NonPositiveWeight {
        line: usize,
        column: usize,
        weight: f64,
    },
    #[error("line {line}: weight for column {column} assigned twice")]
    DuplicateWeight { line: usize, column: usize },
    #[error("line {line}: column {column} repeated within clause")]
    DuplicateLiteral { line: usize, column: usize },
    #[error("missing weight line for column {column}")]
    MissingWeight { column: usize },
    #[error("expected {expected} clauses, found {found}")]
    ClauseCount { expected: usize, found: usize },
    #[error("missing problem line `p cnf <nCols> <mRows>`")]
    MissingHeader,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    match tok.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(syntax(line, format!("{what} must be a positive integer, got `{tok}`"))),
    }
}

/// Parses a `.cnfU` / `.cnfW` body. The weight kind is `Weighted` iff at
/// least one `w` line is present, in which case every column needs one.
pub fn parse_cnf(text: &str) -> Result<BigraphInstance, ParseError> {
    let mut name: Option<String> = None;
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<f64>> = Vec::new();
    let mut any_weight = false;
    let mut rows: Vec<Vec<Literal>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let first = tokens.next().unwrap_or_default();
        match first {
            "c" => {
                if name.is_none() && tokens.next() == Some(NAME_TAG) {
                    if let Some(n) = tokens.next() {
                        name = Some(n.to_string());
                    }
                }
            }
            _ if first.starts_with('c') && first.parse::<i64>().is_err() => {}
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                if tokens.next() != Some("cnf") {
                    return Err(syntax(line, "expected `p cnf <nCols> <mRows>`"));
                }
                let n = parse_count(tokens.next(), line, "nCols")?;
                let m = parse_count(tokens.next(), line, "mRows")?;
                if tokens.next().is_some() {
                    return Err(syntax(line, "trailing tokens after problem line"));
                }
                header = Some((n, m));
                weights = vec![None; n];
            }
            "w" => {
                let (n, _) = header.ok_or_else(|| syntax(line, "weight before problem line"))?;
                if !rows.is_empty() {
                    return Err(syntax(line, "weight lines must precede clauses"));
                }
                let col_tok = tokens.next().ok_or_else(|| syntax(line, "missing column index"))?;
                let col: i64 = col_tok
                    .parse()
                    .map_err(|_| syntax(line, format!("bad column index `{col_tok}`")))?;
                if col < 1 || col as u64 > n as u64 {
                    return Err(ParseError::IndexOutOfRange {
                        line,
                        index: col,
                        n_cols: n,
                    });
                }
                let w_tok = tokens.next().ok_or_else(|| syntax(line, "missing weight"))?;
                let w: f64 = w_tok
                    .parse()
                    .map_err(|_| syntax(line, format!("bad weight `{w_tok}`")))?;
                if tokens.next().is_some() {
                    return Err(syntax(line, "trailing tokens after weight"));
                }
                let column = col as usize;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(ParseError::NonPositiveWeight {
                        line,
                        column,
                        weight: w,
                    });
                }
                if weights[column - 1].replace(w).is_some() {
                    return Err(ParseError::DuplicateWeight { line, column });
                }
                any_weight = true;
            }
            _ => {
                let (n, m) = header.ok_or_else(|| syntax(line, "clause before problem line"))?;
                let mut clause = Vec::new();
                let mut terminated = false;
                for tok in trimmed.split_whitespace() {
                    if terminated {
                        return Err(syntax(line, "tokens after clause terminator 0"));
                    }
                    let lit: i64 = tok
                        .parse()
                        .map_err(|_| syntax(line, format!("bad literal `{tok}`")))?;
                    if lit == 0 {
                        terminated = true;
                        continue;
                    }
                    if lit.unsigned_abs() > n as u64 {
                        return Err(ParseError::IndexOutOfRange {
                            line,
                            index: lit,
                            n_cols: n,
                        });
                    }
                    let column = lit.unsigned_abs() as usize;
                    if clause.iter().any(|&l: &Literal| l.unsigned_abs() as usize == column) {
                        return Err(ParseError::DuplicateLiteral { line, column });
                    }
                    clause.push(lit as Literal);
                }
                if !terminated {
                    return Err(syntax(line, "clause not terminated by 0"));
                }
                if clause.is_empty() {
                    return Err(syntax(line, "empty clause"));
                }
                if rows.len() == m {
                    return Err(ParseError::ClauseCount {
                        expected: m,
                        found: m + 1,
                    });
                }
                rows.push(clause);
            }
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if rows.len() != m {
        return Err(ParseError::ClauseCount {
            expected: m,
            found: rows.len(),
        });
    }
    let name = name.unwrap_or_else(|| "unnamed".to_string());
    let instance = if any_weight {
        let mut ws = Vec::with_capacity(n);
        for (j, w) in weights.into_iter().enumerate() {
            ws.push(w.ok_or(ParseError::MissingWeight { column: j + 1 })?);
        }
        BigraphInstance::weighted(name, n, rows, ws)?
    } else {
        BigraphInstance::unit(name, n, rows)?
    };
    Ok(instance)
}

/// Canonical text form; `parse_cnf(&write_cnf(i)) == i` for every valid `i`.
pub fn write_cnf(instance: &BigraphInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c {NAME_TAG} {}", instance.name());
    let _ = writeln!(out, "p cnf {} {}", instance.n_cols(), instance.m_rows());
    if instance.weight_kind() == WeightKind::Weighted {
        for (j, w) in instance.col_weights().iter().enumerate() {
            // shortest representation that parses back to the same f64
            let _ = writeln!(out, "w {} {}", j + 1, w);
        }
    }
    for clause in instance.rows() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let inst = parse_cnf("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(inst.n_cols(), 1);
        assert_eq!(inst.m_rows(), 1);
        assert_eq!(inst.col_weights(), &[1.0]);
        assert_eq!(inst.weight_kind(), WeightKind::Unit);
        assert_eq!(inst.name(), "unnamed");
    }

    #[test]
    fn write_smallest() {
        let inst = BigraphInstance::unit("one", 1, vec![vec![1]]).unwrap();
        let text = write_cnf(&inst);
        assert_eq!(text, "c instance one\np cnf 1 1\n1 0\n");
        assert_eq!(parse_cnf(&text).unwrap(), inst);
    }

    #[test]
    fn weighted_and_binate() {
        let text = "c instance demo\nc free comment\np cnf 3 2\nw 1 2.5\nw 3 1\nw 2 0.5\n\n-2 1 0\n3 0\n";
        let inst = parse_cnf(text).unwrap();
        assert_eq!(inst.name(), "demo");
        assert_eq!(inst.weight_kind(), WeightKind::Weighted);
        assert_eq!(inst.col_weights(), &[2.5, 0.5, 1.0]);
        assert_eq!(inst.rows()[0], vec![1, -2]);
        assert!(!inst.is_unate());
        assert_eq!(parse_cnf(&write_cnf(&inst)).unwrap(), inst);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_cnf("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
        let err = parse_cnf("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_cnf("1 0\np cnf 1 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let err = parse_cnf("p cnf 2 1\n0\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_cnf("p cnf 2 1\n1 0 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_cnf("p cnf 0 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let err = parse_cnf("p cnf 1 1\n1 0\nw 1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        assert_eq!(parse_cnf("c only\n").unwrap_err(), ParseError::MissingHeader);
    }

    #[test]
    fn range_and_weight_errors() {
        assert_eq!(
            parse_cnf("p cnf 2 1\n1 -3 0\n").unwrap_err(),
            ParseError::IndexOutOfRange {
                line: 2,
                index: -3,
                n_cols: 2
            }
        );
        assert!(matches!(
            parse_cnf("p cnf 2 1\nw 3 1\n1 0\n").unwrap_err(),
            ParseError::IndexOutOfRange { line: 2, index: 3, .. }
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 1\nw 1 -1\n1 0\n").unwrap_err(),
            ParseError::NonPositiveWeight { line: 2, column: 1, .. }
        ));
        assert!(matches!(
            parse_cnf("p cnf 1 1\nw 1 0\n1 0\n").unwrap_err(),
            ParseError::NonPositiveWeight { .. }
        ));
        assert_eq!(
            parse_cnf("p cnf 1 1\nw 1 1\nw 1 2\n1 0\n").unwrap_err(),
            ParseError::DuplicateWeight { line: 3, column: 1 }
        );
        assert_eq!(
            parse_cnf("p cnf 2 1\nw 1 1\n1 0\n").unwrap_err(),
            ParseError::MissingWeight { column: 2 }
        );
        assert_eq!(
            parse_cnf("p cnf 2 1\n1 -1 0\n").unwrap_err(),
            ParseError::DuplicateLiteral { line: 2, column: 1 }
        );
    }

    #[test]
    fn clause_count_must_match_header() {
        assert_eq!(
            parse_cnf("p cnf 1 2\n1 0\n").unwrap_err(),
            ParseError::ClauseCount {
                expected: 2,
                found: 1
            }
        );
        assert!(matches!(
            parse_cnf("p cnf 1 1\n1 0\n1 0\n").unwrap_err(),
            ParseError::ClauseCount { expected: 1, .. }
        ));
    }
}
