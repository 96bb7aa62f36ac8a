//! Seed-driven generators: random unate instances, column-permuted
//! isomorphs, urn-model trials and synthetic movie-library data.

mod movielib;
mod rng;

pub use movielib::{gen_movielib, read_movies_csv, read_watches_csv, write_movies_csv, write_watches_csv, MovieRecord, WatchRecord};
pub use rng::SeededRng;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::instance::{BigraphInstance, InstanceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("permutation of length {found} does not fit {expected} columns")]
    PermutationLength { expected: usize, found: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Bijection on the columns: output column `idx` carries input column
/// `perm[idx]` (both 0-based here, 1-based when displayed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnPermutation(Vec<usize>);

impl ColumnPermutation {
    pub fn identity(n: usize) -> Self {
        ColumnPermutation((0..n).collect())
    }

    /// Builds from 0-based images; `None` unless `perm` is a bijection.
    pub fn from_zero_based(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(ColumnPermutation(perm))
    }

    pub fn from_one_based(perm: &[usize]) -> Option<Self> {
        if perm.contains(&0) {
            return None;
        }
        Self::from_zero_based(perm.iter().map(|&p| p - 1).collect())
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        ColumnPermutation(perm)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Input column carried by output column `idx`.
    pub fn source(&self, idx: usize) -> usize {
        self.0[idx]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    /// `inverse()[j]` is the output position of input column `j`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.0.len()];
        for (idx, &j) in self.0.iter().enumerate() {
            inv[j] = idx;
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Random unit-weight unate instance named `m{m}_{n}_{deg_min}_{deg_max}_s{seed}`.
///
/// The seed suffix keeps generated instances apart from published instances
/// of the same shape in the best-known-value registry.
///
/// Each row draws its degree uniformly from `deg_min..=deg_max`, then that
/// many distinct columns uniformly without replacement.
pub fn gen_random_instance(
    m_rows: usize,
    n_cols: usize,
    deg_min: usize,
    deg_max: usize,
    seed: u64,
) -> Result<BigraphInstance, GeneratorError> {
    if m_rows == 0 || n_cols == 0 || deg_min == 0 || deg_min > deg_max || deg_max > n_cols {
        return Err(GeneratorError::InvalidParameters(format!(
            "need 1 <= degMin <= degMax <= nCols and mRows >= 1, got mRows={m_rows} nCols={n_cols} degMin={deg_min} degMax={deg_max}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let rows = (0..m_rows)
        .map(|_| {
            let deg = rng.random_range(deg_min..=deg_max);
            index::sample(&mut rng, n_cols, deg)
                .into_iter()
                .map(|c| c as i32 + 1)
                .collect()
        })
        .collect();
    let name = format!("m{m_rows}_{n_cols}_{deg_min}_{deg_max}_s{seed}");
    Ok(BigraphInstance::unit(name, n_cols, rows)?)
}

/// Relabels columns: output column `idx` is input column `perm.source(idx)`,
/// weight included.
pub fn apply_permutation(
    instance: &BigraphInstance,
    perm: &ColumnPermutation,
    name: impl Into<String>,
) -> Result<BigraphInstance, GeneratorError> {
    if perm.len() != instance.n_cols() {
        return Err(GeneratorError::PermutationLength {
            expected: instance.n_cols(),
            found: perm.len(),
        });
    }
    let inv = perm.inverse();
    let rows = instance
        .rows()
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|&lit| {
                    let pos = inv[lit.unsigned_abs() as usize - 1] as i32 + 1;
                    if lit < 0 {
                        -pos
                    } else {
                        pos
                    }
                })
                .collect()
        })
        .collect();
    let weights = perm
        .as_slice()
        .iter()
        .map(|&j| instance.col_weights()[j])
        .collect();
    let out = match instance.weight_kind() {
        crate::instance::WeightKind::Unit => BigraphInstance::unit(name, instance.n_cols(), rows)?,
        crate::instance::WeightKind::Weighted => {
            BigraphInstance::weighted(name, instance.n_cols(), rows, weights)?
        }
    };
    Ok(out)
}

/// Column-permuted copy controlled by `replica_id`. Replica 0 is the
/// reference (natural order); any other id seeds the shuffle.
pub fn gen_isomorph(
    instance: &BigraphInstance,
    replica_id: u64,
) -> Result<(BigraphInstance, ColumnPermutation), GeneratorError> {
    instance.require_unate()?;
    if replica_id == 0 {
        return Ok((instance.clone(), ColumnPermutation::identity(instance.n_cols())));
    }
    let mut rng = SeededRng::new(replica_id);
    let perm = ColumnPermutation::random(instance.n_cols(), &mut rng);
    let iso = apply_permutation(instance, &perm, format!("{}_iso{replica_id}", instance.name()))?;
    Ok((iso, perm))
}

/// Fraction of distinct tags seen after `num_trials` draws with replacement
/// from an urn of `urn_size` tags.
pub fn urn_trial(urn_size: usize, num_trials: usize, seed: u64) -> Result<f64, GeneratorError> {
    if urn_size == 0 || num_trials == 0 {
        return Err(GeneratorError::InvalidParameters(format!(
            "urn size and trial count must be positive, got {urn_size} and {num_trials}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut seen = vec![false; urn_size];
    let mut distinct = 0usize;
    for _ in 0..num_trials {
        let tag = rng.random_range(0..urn_size);
        if !std::mem::replace(&mut seen[tag], true) {
            distinct += 1;
        }
    }
    Ok(distinct as f64 / urn_size as f64)
}
