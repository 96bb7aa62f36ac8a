//! Seeded replication of the stochastic greedy solvers, with distribution
//! statistics, ratios against best-known values, and convergence tables.

mod bkv;
mod stats;

pub use bkv::{BkvEntry, BkvRegistry, BKV_REGISTRY_ENV};
pub use stats::{round2, FiveStats};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{CoverError, CoverModel};
use crate::generators::SeededRng;
use crate::instance::BigraphInstance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("replica {replica_id} failed: {source}")]
    Replica { replica_id: u64, source: CoverError },
    #[error("statistics need at least one value")]
    EmptySample,
    #[error("best-known value must be positive and finite, got {0}")]
    NonPositiveBkv(f64),
    #[error("no best-known value registered for `{0}`")]
    MissingBkv(String),
    #[error("bad registry entry: {0}")]
    Registry(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    /// Random tie-breaking on the reference instance.
    Stoc,
    /// Deterministic greedy on a seeded isomorph.
    Iso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedMode {
    /// Replica ids `1..=numSeeds`.
    Consecutive,
    /// Replica ids drawn uniformly from `1..1_000_000` by a stream seeded
    /// with `master_seed`; repeats are possible.
    Random { master_seed: u64 },
}

impl SeedMode {
    pub fn replica_ids(&self, num_seeds: usize) -> Vec<u64> {
        match *self {
            SeedMode::Consecutive => (1..=num_seeds as u64).collect(),
            SeedMode::Random { master_seed } => {
                let mut rng = SeededRng::new(master_seed);
                (0..num_seeds).map(|_| rng.random_range(1..1_000_000)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicaRecord {
    pub replica_id: u64,
    pub value: f64,
}

/// One histogram bin. Values are bucketed by exact equality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub value: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionSummary {
    pub instance_name: String,
    pub num_seeds: usize,
    /// Ascending by value; counts sum to `num_seeds`.
    pub histogram: Vec<HistogramBin>,
    pub stats: FiveStats,
    pub bkv: Option<f64>,
    pub ratio_stats: Option<FiveStats>,
    /// In replica order.
    pub replicas: Vec<ReplicaRecord>,
}

impl DistributionSummary {
    pub fn from_replicas(
        instance_name: impl Into<String>,
        replicas: Vec<ReplicaRecord>,
        bkv: Option<f64>,
    ) -> Result<Self, ExperimentError> {
        let values: Vec<f64> = replicas.iter().map(|r| r.value).collect();
        let stats = FiveStats::from_values(&values).ok_or(ExperimentError::EmptySample)?;
        let ratio_stats = bkv.map(|b| ratio_stats(&values, b)).transpose()?;
        Ok(DistributionSummary {
            instance_name: instance_name.into(),
            num_seeds: values.len(),
            histogram: histogram(&values),
            stats,
            bkv,
            ratio_stats,
            replicas,
        })
    }

    /// Fraction of replicas reaching `value` exactly.
    pub fn frequency(&self, value: f64) -> f64 {
        let count = self
            .histogram
            .iter()
            .find(|b| b.value == value)
            .map_or(0, |b| b.count);
        count as f64 / self.num_seeds as f64
    }

    pub fn support(&self) -> Vec<f64> {
        self.histogram.iter().map(|b| b.value).collect()
    }

    /// `min,median,mean,sd,max` at display precision.
    pub fn stats_string(&self) -> String {
        self.stats.value_string()
    }

    /// Ratios against the best-known value, when one is known.
    pub fn ratio_string(&self) -> Option<String> {
        self.bkv.map(|b| self.stats.ratio_string(b))
    }

    /// Minimum observed ratio at display precision.
    pub fn best_ratio(&self) -> Option<f64> {
        self.bkv.map(|b| display_ratio(self.stats.min, b))
    }
}

fn histogram(values: &[f64]) -> Vec<HistogramBin> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut bins: Vec<HistogramBin> = Vec::new();
    for v in sorted {
        match bins.last_mut() {
            Some(b) if b.value == v => b.count += 1,
            _ => bins.push(HistogramBin { value: v, count: 1 }),
        }
    }
    bins
}

/// `round2(round2(value) / bkv)`: the ratio as it appears next to the
/// displayed value.
pub fn display_ratio(value: f64, bkv: f64) -> f64 {
    round2(round2(value) / bkv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributionConfig {
    pub num_seeds: usize,
    pub solver: Solver,
    pub seed_mode: SeedMode,
}

impl DistributionConfig {
    pub fn new(num_seeds: usize, solver: Solver) -> Self {
        DistributionConfig {
            num_seeds,
            solver,
            seed_mode: SeedMode::Consecutive,
        }
    }

    pub fn with_seed_mode(mut self, seed_mode: SeedMode) -> Self {
        self.seed_mode = seed_mode;
        self
    }
}

/// Runs `config.num_seeds` replicas in parallel. Results do not depend on
/// the thread count.
pub fn run_cover_distribution(
    instance: &BigraphInstance,
    config: &DistributionConfig,
    bkv: Option<f64>,
) -> Result<DistributionSummary, ExperimentError> {
    let model = CoverModel::new(instance)?;
    run_with_model(&model, config, bkv)
}

/// As [`run_cover_distribution`], reusing a prepared model (and its tie tolerance).
pub fn run_with_model(
    model: &CoverModel,
    config: &DistributionConfig,
    bkv: Option<f64>,
) -> Result<DistributionSummary, ExperimentError> {
    if config.num_seeds == 0 {
        return Err(ExperimentError::InvalidArgument(
            "numSeeds must be at least 1".into(),
        ));
    }
    let replicas = replica_values(model, config)?;
    DistributionSummary::from_replicas(model.instance().name(), replicas, bkv)
}

fn replica_values(
    model: &CoverModel,
    config: &DistributionConfig,
) -> Result<Vec<ReplicaRecord>, ExperimentError> {
    config
        .seed_mode
        .replica_ids(config.num_seeds)
        .into_par_iter()
        .map(|replica_id| {
            let sol = match config.solver {
                Solver::Stoc => model.stoc(replica_id),
                Solver::Iso => model
                    .iso(replica_id)
                    .map_err(|source| ExperimentError::Replica { replica_id, source })?,
            };
            Ok(ReplicaRecord {
                replica_id,
                value: sol.value,
            })
        })
        .collect()
}

/// Five statistics of `value / bkv`, at full precision.
pub fn ratio_stats(values: &[f64], bkv: f64) -> Result<FiveStats, ExperimentError> {
    if !(bkv > 0.0 && bkv.is_finite()) {
        return Err(ExperimentError::NonPositiveBkv(bkv));
    }
    let ratios: Vec<f64> = values.iter().map(|v| v / bkv).collect();
    FiveStats::from_values(&ratios).ok_or(ExperimentError::EmptySample)
}

/// Instances grouped by their best displayed ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RatioBuckets {
    /// Best ratio 1.00.
    pub optimal: usize,
    /// Best ratio in (1.00, 1.10].
    pub near: usize,
    /// Best ratio above 1.10.
    pub far: usize,
    /// Best ratio below 1.00, meaning the registered value was beaten.
    pub below_bkv: usize,
}

pub fn ratio_bucket_report(
    summaries: &[DistributionSummary],
) -> Result<RatioBuckets, ExperimentError> {
    let mut buckets = RatioBuckets::default();
    for s in summaries {
        let r = s
            .best_ratio()
            .ok_or_else(|| ExperimentError::MissingBkv(s.instance_name.clone()))?;
        // compare in hundredths to stay clear of float noise at the band edges
        let hundredths = (r * 100.0).round() as i64;
        match hundredths {
            h if h < 100 => buckets.below_bkv += 1,
            100 => buckets.optimal += 1,
            h if h <= 110 => buckets.near += 1,
            _ => buckets.far += 1,
        }
    }
    Ok(buckets)
}

/// One summary per entry of `seed_counts`, each over the first `count`
/// replicas of a single run of `max(seed_counts)` replicas.
pub fn converge_check(
    instance: &BigraphInstance,
    seed_counts: &[usize],
    solver: Solver,
    seed_mode: SeedMode,
    bkv: Option<f64>,
) -> Result<Vec<DistributionSummary>, ExperimentError> {
    if seed_counts.is_empty() || seed_counts[0] == 0 {
        return Err(ExperimentError::InvalidArgument(
            "seed counts must be nonempty and positive".into(),
        ));
    }
    if seed_counts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::InvalidArgument(format!(
            "seed counts must be strictly ascending, got {seed_counts:?}"
        )));
    }
    let model = CoverModel::new(instance)?;
    let config = DistributionConfig {
        num_seeds: *seed_counts.last().unwrap(),
        solver,
        seed_mode,
    };
    let all = replica_values(&model, &config)?;
    seed_counts
        .iter()
        .map(|&n| DistributionSummary::from_replicas(instance.name(), all[..n].to_vec(), bkv))
        .collect()
}

/// Rows of `instance,numSeeds,value,count`, with a header.
pub fn histogram_csv(summaries: &[DistributionSummary]) -> String {
    let mut out = String::from("instance,numSeeds,value,count\n");
    for s in summaries {
        for b in &s.histogram {
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.instance_name, s.num_seeds, b.value, b.count
            ));
        }
    }
    out
}

/// Rows of `instance,numSeeds,stats,bkv,ratios`, with a header. The two
/// comma-joined fields are quoted; unknown values are left empty.
pub fn stats_csv(summaries: &[DistributionSummary]) -> String {
    let mut out = String::from("instance,numSeeds,stats,bkv,ratios\n");
    for s in summaries {
        out.push_str(&format!(
            "{},{},\"{}\",{},\"{}\"\n",
            s.instance_name,
            s.num_seeds,
            s.stats_string(),
            s.bkv.map(|b| b.to_string()).unwrap_or_default(),
            s.ratio_string().unwrap_or_default(),
        ));
    }
    out
}
