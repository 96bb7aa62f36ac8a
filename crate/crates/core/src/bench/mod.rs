//! Top-K and histogram aggregation over movie-library records, and a
//! timing harness that reports the read and solve phases separately.

mod tasks;
mod timing;
mod topk;

pub use tasks::{HistTask, MatchTask, TopKTask, UrnTask};
pub use timing::{
    asymptotic_sweep, sweep_csv, time_phases, timings_csv, PhaseTiming, PhasedTask, SweepRow, Timed,
};
pub use topk::{
    histogram_csv, topk_movies, watch_histogram, AggregationStrategy, TopKEntry, TopKResult,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Prepare,
    Read,
    Solve,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Prepare => "prepare",
            Phase::Read => "read",
            Phase::Solve => "solve",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("watch {watch_id} references unknown movie `{movie_id}`")]
    UnknownMovie { watch_id: u64, movie_id: String },
    #[error("{phase} phase failed at size {size}: {message}")]
    Phase { phase: Phase, size: usize, message: String },
    #[error("solve output changed between repetitions at size {size}")]
    Nondeterministic { size: usize },
}

/// Parses a size list: `1024,4096`, a power-of-two range `2^10..2^20`
/// (every power), or a range with a multiplier `2^10..2^20:4`. Single
/// terms may be plain integers or `b^e`.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>, BenchError> {
    let bad = |why: &str| BenchError::InvalidArgument(format!("size list `{spec}`: {why}"));
    let term = |t: &str| -> Result<usize, BenchError> {
        let t = t.trim();
        let v = match t.split_once('^') {
            Some((b, e)) => {
                let b: usize = b.trim().parse().map_err(|_| bad("bad base"))?;
                let e: u32 = e.trim().parse().map_err(|_| bad("bad exponent"))?;
                b.checked_pow(e).ok_or_else(|| bad("overflow"))?
            }
            None => t.parse().map_err(|_| bad("bad integer"))?,
        };
        if v == 0 {
            return Err(bad("sizes must be positive"));
        }
        Ok(v)
    };
    let sizes = if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, s)) => (hi, term(s)?),
            None => (rest, 2),
        };
        let (lo, hi) = (term(lo)?, term(hi)?);
        if step < 2 || lo > hi {
            return Err(bad("need lo <= hi and multiplier >= 2"));
        }
        let mut out = vec![lo];
        while let Some(next) = out.last().unwrap().checked_mul(step).filter(|&n| n <= hi) {
            out.push(next);
        }
        out
    } else {
        spec.split(',').map(term).collect::<Result<Vec<_>, _>>()?
    };
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("sizes must be strictly ascending"));
    }
    Ok(sizes)
}
