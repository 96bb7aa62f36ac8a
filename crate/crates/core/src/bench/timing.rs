use std::fmt::Debug;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::{BenchError, Phase};

/// Serializes timing runs within the process; concurrent measurements would
/// distort each other.
static TIMING_LOCK: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTiming {
    pub label: String,
    pub size: usize,
    /// Seconds spent parsing input and building data structures.
    pub runtime_read: f64,
    /// Seconds spent in the algorithm itself.
    pub runtime_solve: f64,
}

/// A workload split into an untimed preparation step and two timed phases.
pub trait PhasedTask {
    /// Raw input, e.g. serialized text, produced outside the clock.
    type Raw;
    /// In-memory structures built by the read phase.
    type Data;
    type Output: PartialEq + Debug;

    fn label(&self) -> String;
    fn prepare(&self, size: usize) -> Result<Self::Raw, String>;
    fn read(&self, raw: &Self::Raw) -> Result<Self::Data, String>;
    fn solve(&self, data: &Self::Data) -> Result<Self::Output, String>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Timed<O> {
    pub timing: PhaseTiming,
    /// Output of the first repetition; every repetition produced the same.
    pub output: O,
}

fn median(mut xs: Vec<Duration>) -> f64 {
    xs.sort();
    xs[(xs.len() - 1) / 2].as_secs_f64()
}

/// Times `repetitions` read/solve rounds on one prepared input and reports
/// the median of each phase. Fails if any round disagrees with the first.
pub fn time_phases<T: PhasedTask>(
    task: &T,
    size: usize,
    repetitions: usize,
) -> Result<Timed<T::Output>, BenchError> {
    if repetitions == 0 {
        return Err(BenchError::InvalidArgument("repetitions must be at least 1".into()));
    }
    let fail = |phase, message| BenchError::Phase { phase, size, message };
    let _guard = TIMING_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let raw = task.prepare(size).map_err(|m| fail(Phase::Prepare, m))?;
    let mut reads = Vec::with_capacity(repetitions);
    let mut solves = Vec::with_capacity(repetitions);
    let mut first: Option<T::Output> = None;
    for _ in 0..repetitions {
        let t0 = Instant::now();
        let data = task.read(&raw).map_err(|m| fail(Phase::Read, m))?;
        let t1 = Instant::now();
        let out = task.solve(&data).map_err(|m| fail(Phase::Solve, m))?;
        let t2 = Instant::now();
        reads.push(t1 - t0);
        solves.push(t2 - t1);
        match &first {
            None => first = Some(out),
            Some(f) if *f != out => return Err(BenchError::Nondeterministic { size }),
            Some(_) => {}
        }
    }
    Ok(Timed {
        timing: PhaseTiming {
            label: task.label(),
            size,
            runtime_read: median(reads),
            runtime_solve: median(solves),
        },
        output: first.expect("at least one repetition"),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<O> {
    pub size: usize,
    pub result: Result<Timed<O>, BenchError>,
}

/// One timing per size. A failing size is recorded and the sweep continues.
pub fn asymptotic_sweep<T: PhasedTask>(
    task: &T,
    sizes: &[usize],
    repetitions: usize,
) -> Result<Vec<SweepRow<T::Output>>, BenchError> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::InvalidArgument(format!(
            "sizes must be nonempty and strictly ascending, got {sizes:?}"
        )));
    }
    Ok(sizes
        .iter()
        .map(|&size| SweepRow {
            size,
            result: time_phases(task, size, repetitions),
        })
        .collect())
}

/// `size,runtime_read,runtime_solve,label` with seconds at 6 decimals.
pub fn timings_csv<'a>(rows: impl IntoIterator<Item = &'a PhaseTiming>) -> String {
    let mut out = String::from("size,runtime_read,runtime_solve,label\n");
    for t in rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{}\n",
            t.size, t.runtime_read, t.runtime_solve, t.label
        ));
    }
    out
}

/// Successful rows as CSV, skipping failed sizes.
pub fn sweep_csv<O>(rows: &[SweepRow<O>]) -> String {
    timings_csv(rows.iter().filter_map(|r| r.result.as_ref().ok().map(|t| &t.timing)))
}
