use rand::Rng;

use super::{CoverError, CoverSolution};
use crate::generators::{apply_permutation, gen_isomorph, ColumnPermutation, SeededRng};
use crate::instance::BigraphInstance;

/// Mutable part of a greedy run: which rows are still uncovered and how many
/// of them each column would cover.
#[derive(Debug, Clone)]
pub(crate) struct GreedyState {
    degree: Vec<usize>,
    covered: Vec<bool>,
    uncovered: usize,
    coord: Vec<bool>,
    order: Vec<usize>,
}

impl GreedyState {
    /// Columns tied at the minimum weight/degree rate, ascending. Empty once
    /// every row is covered (all rates infinite).
    pub(crate) fn tied(&self, model: &CoverModel) -> Vec<usize> {
        if self.uncovered == 0 {
            return Vec::new();
        }
        let weights = model.instance.col_weights();
        let mut min = f64::INFINITY;
        for (j, &d) in self.degree.iter().enumerate() {
            if d > 0 {
                min = min.min(weights[j] / d as f64);
            }
        }
        let limit = min * (1.0 + model.tie_tolerance);
        self.degree
            .iter()
            .enumerate()
            .filter(|&(j, &d)| d > 0 && weights[j] / d as f64 <= limit)
            .map(|(j, _)| j)
            .collect()
    }

    pub(crate) fn select(&mut self, model: &CoverModel, col: usize) {
        for &r in &model.col_rows[col] {
            if !std::mem::replace(&mut self.covered[r], true) {
                self.uncovered -= 1;
                for &c in &model.row_cols[r] {
                    self.degree[c] -= 1;
                }
            }
        }
        self.coord[col] = true;
        self.order.push(col);
    }

    pub(crate) fn coord(&self) -> &[bool] {
        &self.coord
    }

    fn finish(self, model: &CoverModel, replica_id: u64) -> CoverSolution {
        CoverSolution {
            value: super::cover_value(model.instance.col_weights(), &self.coord),
            n_ops: self.order.len(),
            coord: self.coord,
            order: self.order,
            replica_id,
        }
    }
}

/// A unate, coverable instance prepared for repeated greedy runs.
#[derive(Debug, Clone)]
pub struct CoverModel<'a> {
    instance: &'a BigraphInstance,
    col_rows: Vec<Vec<usize>>,
    row_cols: Vec<Vec<usize>>,
    tie_tolerance: f64,
}

impl<'a> CoverModel<'a> {
    pub fn new(instance: &'a BigraphInstance) -> Result<Self, CoverError> {
        instance.require_unate()?;
        let row_cols: Vec<Vec<usize>> = instance
            .rows()
            .iter()
            .map(|clause| clause.iter().map(|&l| l as usize - 1).collect())
            .collect();
        if let Some(r) = row_cols.iter().position(Vec::is_empty) {
            return Err(CoverError::UncoverableRow { row: r + 1 });
        }
        Ok(CoverModel {
            instance,
            col_rows: instance.column_rows(),
            row_cols,
            tie_tolerance: 0.0,
        })
    }

    /// Rates within `min * (1 + eps)` count as tied. Default 0: exact equality.
    pub fn with_tie_tolerance(mut self, eps: f64) -> Result<Self, CoverError> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(CoverError::InvalidArgument(format!(
                "tie tolerance must be finite and nonnegative, got {eps}"
            )));
        }
        self.tie_tolerance = eps;
        Ok(self)
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    pub fn instance(&self) -> &BigraphInstance {
        self.instance
    }

    pub(crate) fn initial_state(&self) -> GreedyState {
        GreedyState {
            degree: self.col_rows.iter().map(Vec::len).collect(),
            covered: vec![false; self.instance.m_rows()],
            uncovered: self.instance.m_rows(),
            coord: vec![false; self.instance.n_cols()],
            order: Vec::new(),
        }
    }

    fn run(&self, replica_id: u64, mut pick: impl FnMut(&[usize]) -> usize) -> CoverSolution {
        let mut state = self.initial_state();
        loop {
            let tied = state.tied(self);
            if tied.is_empty() {
                break;
            }
            let col = pick(&tied);
            state.select(self, col);
        }
        state.finish(self, replica_id)
    }

    /// Deterministic greedy: lowest-index column among those at minimum rate.
    pub fn basic(&self) -> CoverSolution {
        self.run(0, |tied| tied[0])
    }

    /// Replica 0 is [`CoverModel::basic`]; otherwise ties are broken uniformly
    /// at random from a stream seeded with `replica_id`.
    pub fn stoc(&self, replica_id: u64) -> CoverSolution {
        if replica_id == 0 {
            return self.basic();
        }
        self.stoc_seeded(replica_id, replica_id)
    }

    /// Stochastic tie-breaking with an explicit seed, reported under `replica_id`.
    pub fn stoc_seeded(&self, replica_id: u64, seed: u64) -> CoverSolution {
        let mut rng = SeededRng::new(seed);
        self.run(replica_id, |tied| {
            if tied.len() == 1 {
                tied[0]
            } else {
                tied[rng.random_range(0..tied.len())]
            }
        })
    }

    /// Deterministic greedy on the isomorph selected by `replica_id`, with the
    /// solution mapped back to this instance's column order.
    pub fn iso(&self, replica_id: u64) -> Result<CoverSolution, CoverError> {
        let (iso, perm) = gen_isomorph(self.instance, replica_id)?;
        let mut sol = self.basic_on(&iso, &perm)?;
        sol.replica_id = replica_id;
        Ok(sol)
    }

    /// Deterministic greedy on an arbitrary column permutation, mapped back.
    pub fn permuted(&self, perm: &ColumnPermutation) -> Result<CoverSolution, CoverError> {
        let iso = apply_permutation(self.instance, perm, self.instance.name())?;
        self.basic_on(&iso, perm)
    }

    fn basic_on(
        &self,
        iso: &BigraphInstance,
        perm: &ColumnPermutation,
    ) -> Result<CoverSolution, CoverError> {
        let model = CoverModel::new(iso)?.with_tie_tolerance(self.tie_tolerance)?;
        let sol = model.basic();
        let mut coord = vec![false; self.instance.n_cols()];
        for (idx, &c) in sol.coord.iter().enumerate() {
            coord[perm.source(idx)] = c;
        }
        Ok(CoverSolution {
            value: super::cover_value(self.instance.col_weights(), &coord),
            n_ops: sol.n_ops,
            order: sol.order.iter().map(|&idx| perm.source(idx)).collect(),
            coord,
            replica_id: 0,
        })
    }
}

pub fn greedy_basic(instance: &BigraphInstance) -> Result<CoverSolution, CoverError> {
    Ok(CoverModel::new(instance)?.basic())
}

pub fn greedy_stoc(instance: &BigraphInstance, replica_id: u64) -> Result<CoverSolution, CoverError> {
    Ok(CoverModel::new(instance)?.stoc(replica_id))
}

pub fn greedy_iso(instance: &BigraphInstance, replica_id: u64) -> Result<CoverSolution, CoverError> {
    CoverModel::new(instance)?.iso(replica_id)
}

/// [`greedy_basic`] applied to `perm` of the instance, reported in reference order.
pub fn greedy_with_permutation(
    instance: &BigraphInstance,
    perm: &ColumnPermutation,
) -> Result<CoverSolution, CoverError> {
    CoverModel::new(instance)?.permuted(perm)
}
