//! Maximum-cardinality bipartite matching by augmenting paths (Kuhn's
//! specialization of Ford-Fulkerson to unit capacities), plus an exhaustive
//! oracle for small instances.
//!
//! Columns form the side augmented from, in ascending index order; each
//! depth-first search visits a column's rows in ascending row order, so the
//! returned pairs are a deterministic function of the instance.

use serde::Serialize;
use thiserror::Error;

use crate::instance::{BigraphInstance, InstanceError};

/// Edge budget of [`brute_force_matching`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchingError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("instance has {edges} edges; the exhaustive oracle is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingResult {
    pub size: usize,
    /// 0-based `(row, column)` pairs, sorted by column.
    pub pairs: Vec<(usize, usize)>,
    /// `size / n_cols`
    pub m_p: f64,
}

struct Kuhn<'a> {
    adj: &'a [Vec<usize>],
    row_match: Vec<Option<usize>>,
    /// `visited[r] == epoch` marks rows seen by the current search.
    visited: Vec<u32>,
    epoch: u32,
    /// `(column, next adjacency index)` frames of the current path.
    stack: Vec<(usize, usize)>,
}

impl Kuhn<'_> {
    /// Iterative form of the recursive augmenting-path search, visiting rows
    /// in the same order.
    fn augment(&mut self, root: usize) -> bool {
        self.epoch += 1;
        self.stack.clear();
        self.stack.push((root, 0));
        while let Some(&mut (col, ref mut next)) = self.stack.last_mut() {
            let Some(&row) = self.adj[col].get(*next) else {
                self.stack.pop();
                continue;
            };
            *next += 1;
            if self.visited[row] == self.epoch {
                continue;
            }
            self.visited[row] = self.epoch;
            match self.row_match[row] {
                Some(other) => self.stack.push((other, 0)),
                None => {
                    // each frame's last visited row becomes its match
                    for &(c, i) in &self.stack {
                        self.row_match[self.adj[c][i - 1]] = Some(c);
                    }
                    return true;
                }
            }
        }
        false
    }
}

pub fn max_matching(instance: &BigraphInstance) -> Result<MatchingResult, MatchingError> {
    instance.require_unate()?;
    let adj = instance.column_rows();
    let mut kuhn = Kuhn {
        adj: &adj,
        row_match: vec![None; instance.m_rows()],
        visited: vec![0; instance.m_rows()],
        epoch: 0,
        stack: Vec::new(),
    };
    for col in 0..instance.n_cols() {
        if !adj[col].is_empty() {
            kuhn.augment(col);
        }
    }
    let mut pairs: Vec<(usize, usize)> = kuhn
        .row_match
        .iter()
        .enumerate()
        .filter_map(|(r, c)| c.map(|c| (r, c)))
        .collect();
    pairs.sort_by_key(|&(_, c)| c);
    let size = pairs.len();
    Ok(MatchingResult {
        size,
        pairs,
        m_p: size as f64 / instance.n_cols() as f64,
    })
}

/// Exact maximum matching size by enumerating every row- and column-disjoint
/// edge subset. Limited to [`BRUTE_FORCE_MAX_EDGES`] edges.
pub fn brute_force_matching(instance: &BigraphInstance) -> Result<usize, MatchingError> {
    instance.require_unate()?;
    let edges: Vec<(usize, usize)> = instance
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(r, clause)| clause.iter().map(move |&l| (r, l as usize - 1)))
        .collect();
    if edges.len() > BRUTE_FORCE_MAX_EDGES {
        return Err(MatchingError::TooLarge {
            edges: edges.len(),
            limit: BRUTE_FORCE_MAX_EDGES,
        });
    }

    fn walk(
        edges: &[(usize, usize)],
        at: usize,
        rows_used: &mut [bool],
        cols_used: &mut [bool],
        size: usize,
        best: &mut usize,
    ) {
        if at == edges.len() {
            *best = (*best).max(size);
            return;
        }
        let (r, c) = edges[at];
        if !rows_used[r] && !cols_used[c] {
            rows_used[r] = true;
            cols_used[c] = true;
            walk(edges, at + 1, rows_used, cols_used, size + 1, best);
            rows_used[r] = false;
            cols_used[c] = false;
        }
        walk(edges, at + 1, rows_used, cols_used, size, best);
    }

    let mut best = 0;
    walk(
        &edges,
        0,
        &mut vec![false; instance.m_rows()],
        &mut vec![false; instance.n_cols()],
        0,
        &mut best,
    );
    Ok(best)
}
