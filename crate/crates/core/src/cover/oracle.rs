//! Exhaustive references for small instances: the exact minimum-weight cover
//! and the full tree of greedy tie-break choices.

use std::collections::BTreeMap;

use super::greedy::{CoverModel, GreedyState};
use super::{cover_value, CoverError};
use crate::instance::BigraphInstance;

pub const BRUTE_FORCE_MAX_COLS: usize = 24;
pub const ENUMERATION_MAX_COLS: usize = 8;

/// Exact minimum-weight cover over all `2^nCols` column subsets. Among equal
/// values the lexicographically smallest indicator wins.
pub fn brute_force_cover(instance: &BigraphInstance) -> Result<(f64, Vec<bool>), CoverError> {
    let n = instance.n_cols();
    if n > BRUTE_FORCE_MAX_COLS {
        return Err(CoverError::TooLarge {
            n_cols: n,
            limit: BRUTE_FORCE_MAX_COLS,
        });
    }
    // build the model only for its validation
    CoverModel::new(instance)?;
    let row_masks: Vec<u32> = instance
        .rows()
        .iter()
        .map(|clause| clause.iter().fold(0u32, |m, &l| m | 1 << (l - 1)))
        .collect();
    // column 0 is the most significant position of the indicator
    let lex_key = |mask: u32| -> u32 {
        (0..n).fold(0, |k, j| k | ((mask >> j) & 1) << (n - 1 - j))
    };
    let weights = instance.col_weights();
    let mut best: Option<(f64, u32, u32)> = None;
    for mask in 1..(1u64 << n) as u32 {
        if !row_masks.iter().all(|&r| r & mask != 0) {
            continue;
        }
        let value: f64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| weights[j]).sum();
        let key = lex_key(mask);
        let better = match best {
            None => true,
            Some((v, k, _)) => value < v || (value == v && key < k),
        };
        if better {
            best = Some((value, key, mask));
        }
    }
    let (value, _, mask) = best.ok_or(CoverError::UncoverableRow { row: 0 })?;
    let coord = (0..n).map(|j| mask >> j & 1 == 1).collect();
    Ok((value, coord))
}

/// Every greedy outcome reachable under some tie-break sequence, with the
/// probability of reaching it when each tie is broken uniformly at random.
#[derive(Debug, Clone, PartialEq)]
pub struct AchievableOutcomes {
    outcomes: BTreeMap<Vec<bool>, (f64, f64)>,
}

impl AchievableOutcomes {
    /// Distinct selected-column indicators.
    pub fn coords(&self) -> impl Iterator<Item = &Vec<bool>> {
        self.outcomes.keys()
    }

    pub fn num_coords(&self) -> usize {
        self.outcomes.len()
    }

    /// Distinct cover values, ascending.
    pub fn values(&self) -> Vec<f64> {
        let mut vs: Vec<f64> = self.outcomes.values().map(|&(v, _)| v).collect();
        vs.sort_by(f64::total_cmp);
        vs.dedup();
        vs
    }

    /// `(value, probability)` under uniform tie-breaking, ascending by value.
    pub fn value_probabilities(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut pairs: Vec<(f64, f64)> = self.outcomes.values().copied().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (v, p) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += p,
                _ => out.push((v, p)),
            }
        }
        out
    }
}

pub fn enumerate_achievable_values(
    instance: &BigraphInstance,
) -> Result<AchievableOutcomes, CoverError> {
    enumerate_with_model(&CoverModel::new(instance)?)
}

pub(crate) fn enumerate_with_model(model: &CoverModel) -> Result<AchievableOutcomes, CoverError> {
    let n = model.instance().n_cols();
    if n > ENUMERATION_MAX_COLS {
        return Err(CoverError::TooLarge {
            n_cols: n,
            limit: ENUMERATION_MAX_COLS,
        });
    }
    Ok(outcome_tree(model))
}

/// Unbounded walk over every tie-break branch.
pub(crate) fn outcome_tree(model: &CoverModel) -> AchievableOutcomes {
    fn walk(
        model: &CoverModel,
        state: GreedyState,
        prob: f64,
        out: &mut BTreeMap<Vec<bool>, (f64, f64)>,
    ) {
        let tied = state.tied(model);
        if tied.is_empty() {
            let value = cover_value(model.instance().col_weights(), state.coord());
            out.entry(state.coord().to_vec()).or_insert((value, 0.0)).1 += prob;
            return;
        }
        let share = prob / tied.len() as f64;
        for &col in &tied {
            let mut next = state.clone();
            next.select(model, col);
            walk(model, next, share, out);
        }
    }

    let mut outcomes = BTreeMap::new();
    walk(model, model.initial_state(), 1.0, &mut outcomes);
    AchievableOutcomes { outcomes }
}
