//! Command-line front end. Every subcommand builds a [`Report`] (or writes a
//! generated file) so the three output formats share one code path.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bench::{
    self, asymptotic_sweep, parse_sizes, topk_movies, watch_histogram, AggregationStrategy,
    HistTask, MatchTask, PhasedTask, TopKTask, UrnTask,
};
use crate::cover::{self, CoverModel, HarmonicBound};
use crate::experiments::{
    self, converge_check, ratio_bucket_report, run_with_model, BkvRegistry, DistributionConfig,
    DistributionSummary, SeedMode, Solver,
};
use crate::generators::{
    self, gen_isomorph, gen_movielib, gen_random_instance, read_movies_csv, read_watches_csv,
    urn_trial, write_movies_csv, write_watches_csv, MovieRecord, WatchRecord,
};
use crate::instance::{self, compute_stats, ingest_orlib, parse_cnf, write_cnf, BigraphInstance, OrlibWeights};
use crate::matching;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Cover(#[from] cover::CoverError),
    #[error(transparent)]
    Matching(#[from] matching::MatchingError),
    #[error(transparent)]
    Experiment(#[from] experiments::ExperimentError),
    #[error(transparent)]
    Generator(#[from] generators::GeneratorError),
    #[error(transparent)]
    Bench(#[from] bench::BenchError),
    #[error(transparent)]
    Instance(#[from] instance::InstanceError),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} sweep sizes failed")]
    SweepFailures { failed: usize, total: usize },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "bigraph", version, about = "Bipartite instances, matching and greedy set cover experiments")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Generator seed, or master seed in random seed mode.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Number of replicas for distribution runs.
    #[arg(long, global = true, default_value_t = 1000)]
    pub seeds: usize,
    #[arg(long, global = true, value_enum, default_value_t = SeedModeArg::Consecutive)]
    pub seed_mode: SeedModeArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedModeArg {
    Consecutive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Cnf,
    Orlib,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Basic,
    Stoc,
    Iso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistSolverArg {
    Stoc,
    Iso,
}

impl From<DistSolverArg> for Solver {
    fn from(s: DistSolverArg) -> Self {
        match s {
            DistSolverArg::Stoc => Solver::Stoc,
            DistSolverArg::Iso => Solver::Iso,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Hash,
    SortedTable,
}

impl From<StrategyArg> for AggregationStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Hash => AggregationStrategy::Hash,
            StrategyArg::SortedTable => AggregationStrategy::SortedTable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaskArg {
    Topk,
    Hist,
    Match,
    Urn,
}

#[derive(Debug, Clone, Args)]
pub struct InputOpts {
    /// Input format; by default `.cnfU`/`.cnfW` files are CNF, anything else OR-library.
    #[arg(long = "input-format", value_enum)]
    pub input_format: Option<InputFormat>,
    /// Replace every column weight with 1.
    #[arg(long)]
    pub unit: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MovieInput {
    /// Movie table; requires --watches. Without both, data is generated.
    #[arg(long, requires = "watches")]
    pub movies: Option<PathBuf>,
    #[arg(long, requires = "movies")]
    pub watches: Option<PathBuf>,
    /// Generated library size, e.g. 1048576 or 2^20.
    #[arg(long, default_value = "2^10")]
    pub size: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, density and maximum column degree.
    Stats {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        input: InputOpts,
    },
    /// Maximum bipartite matching size and mP.
    Match {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        input: InputOpts,
    },
    /// One greedy cover.
    Cover {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long, value_enum, default_value_t = SolverArg::Basic)]
        solver: SolverArg,
        #[arg(long, default_value_t = 0)]
        replica: u64,
        /// Relative tolerance under which greedy rates count as tied.
        #[arg(long, default_value_t = 0.0)]
        tie_tolerance: f64,
    },
    /// Value distribution over --seeds replicas.
    Dist {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long, value_enum, default_value_t = DistSolverArg::Stoc)]
        solver: DistSolverArg,
        /// Best-known value, overriding the registry (single input only).
        #[arg(long)]
        bkv: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        tie_tolerance: f64,
        /// Emit value histograms instead of statistics.
        #[arg(long)]
        histogram: bool,
        /// Also report how many inputs reach each ratio band.
        #[arg(long)]
        buckets: bool,
    },
    /// Histograms over growing prefixes of one replica run.
    Converge {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long, value_enum, default_value_t = DistSolverArg::Stoc)]
        solver: DistSolverArg,
        /// Ascending seed counts.
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        counts: Vec<usize>,
    },
    /// Chvátal's upper bound H(mCD) * BKV.
    Ub {
        /// Instance to take mCD and the registered BKV from.
        path: Option<PathBuf>,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        bkv: Option<f64>,
        #[arg(long)]
        mcd: Option<usize>,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Column-permuted isomorph in CNF form.
    Iso {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long, default_value_t = 1)]
        replica: u64,
    },
    /// Distinct-tag fraction when drawing with replacement.
    Urn {
        #[arg(long, default_value = "2^10..2^20")]
        sizes: String,
    },
    /// Write a synthetic movie library as movies.csv and watches.csv.
    Movielib {
        #[arg(long, default_value = "2^10")]
        size: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Most-watched movies.
    Topk {
        #[command(flatten)]
        data: MovieInput,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hash)]
        strategy: StrategyArg,
    },
    /// Number of movies per watch count.
    Hist {
        #[command(flatten)]
        data: MovieInput,
    },
    /// Read/solve phase timings across sizes.
    Bench {
        #[arg(long, value_enum, default_value_t = TaskArg::Topk)]
        task: TaskArg,
        #[arg(long, default_value = "2^10..2^16:4")]
        sizes: String,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hash)]
        strategy: StrategyArg,
        /// Row degree of the matching instances.
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Rows draw a degree in DEG_MIN..=DEG_MAX, then that many distinct columns.
    Random {
        m_rows: usize,
        n_cols: usize,
        deg_min: usize,
        deg_max: usize,
    },
}

/// Tabular output rendered as space-separated text, CSV or JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    json: Value,
}

impl Report {
    fn new(header: &[&str], json: Value) -> Self {
        Report {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            json,
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let mut out = String::new();
                for line in std::iter::once(&self.header).chain(&self.rows) {
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
                out
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for line in std::iter::once(&self.header).chain(&self.rows) {
                    w.write_record(line).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".into())
}

/// Reads an instance, detecting the format from the extension unless overridden.
pub fn load_instance(path: &Path, opts: &InputOpts) -> Result<BigraphInstance, CliError> {
    let text = read_text(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let format = opts.input_format.unwrap_or(match ext {
        "cnfU" | "cnfW" => InputFormat::Cnf,
        _ => InputFormat::Orlib,
    });
    let input_err = |message: String| CliError::Input {
        path: path.display().to_string(),
        message,
    };
    let inst = match format {
        InputFormat::Cnf => {
            let inst = parse_cnf(&text).map_err(|e| input_err(e.to_string()))?;
            if inst.name() == "unnamed" {
                inst.with_name(file_stem(path))
            } else {
                inst
            }
        }
        InputFormat::Orlib => ingest_orlib(file_stem(path), &text, OrlibWeights::Costs)
            .map_err(|e| input_err(e.to_string()))?,
    };
    Ok(if opts.unit { inst.to_unit() } else { inst })
}

fn load_movielib(
    data: &MovieInput,
    seed: u64,
) -> Result<(Vec<MovieRecord>, Vec<WatchRecord>), CliError> {
    match (&data.movies, &data.watches) {
        (Some(m), Some(w)) => {
            let csv_err = |path: &Path, e: csv::Error| CliError::Input {
                path: path.display().to_string(),
                message: e.to_string(),
            };
            let movies = read_movies_csv(fs::File::open(m).map_err(io_err(m))?)
                .map_err(|e| csv_err(m, e))?;
            let watches = read_watches_csv(fs::File::open(w).map_err(io_err(w))?)
                .map_err(|e| csv_err(w, e))?;
            Ok((movies, watches))
        }
        _ => Ok(gen_movielib(single_size(&data.size)?, seed)),
    }
}

fn single_size(spec: &str) -> Result<usize, CliError> {
    match parse_sizes(spec)?.as_slice() {
        [one] => Ok(*one),
        _ => Err(CliError::Usage(format!("expected a single size, got `{spec}`"))),
    }
}

fn seed_mode(cli: &Cli) -> SeedMode {
    match cli.seed_mode {
        SeedModeArg::Consecutive => SeedMode::Consecutive,
        SeedModeArg::Random => SeedMode::Random {
            master_seed: cli.seed,
        },
    }
}

/// Output of one command: a report, or raw text such as a generated file.
enum Emit {
    Report(Report),
    Text(String),
}

/// Parses arguments and runs; on failure prints the diagnostic and returns
/// exit status 2.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, &mut std::io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs a parsed command, writing to `--out` if given and `stdout` otherwise.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut deferred: Option<CliError> = None;
    let text = match execute(cli, &mut deferred)? {
        Emit::Report(r) => r.render(cli.format),
        Emit::Text(t) => t,
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(io_err(path))?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>")))?,
    }
    deferred.map_or(Ok(()), Err)
}

fn execute(cli: &Cli, deferred: &mut Option<CliError>) -> Result<Emit, CliError> {
    match &cli.command {
        Command::Stats { paths, input } => cmd_stats(paths, input),
        Command::Match { paths, input } => cmd_match(paths, input),
        Command::Cover {
            path,
            input,
            solver,
            replica,
            tie_tolerance,
        } => cmd_cover(path, input, *solver, *replica, *tie_tolerance),
        Command::Dist {
            paths,
            input,
            solver,
            bkv,
            tie_tolerance,
            histogram,
            buckets,
        } => {
            let opts = DistOpts {
                solver: (*solver).into(),
                bkv: *bkv,
                tie_tolerance: *tie_tolerance,
                histogram: *histogram,
                buckets: *buckets,
            };
            cmd_dist(cli, paths, input, &opts)
        }
        Command::Converge {
            path,
            input,
            solver,
            counts,
        } => cmd_converge(cli, path, input, (*solver).into(), counts),
        Command::Ub {
            path,
            input,
            bkv,
            mcd,
        } => cmd_ub(path.as_deref(), input, *bkv, *mcd),
        Command::Gen { kind } => match kind {
            GenKind::Random {
                m_rows,
                n_cols,
                deg_min,
                deg_max,
            } => Ok(Emit::Text(write_cnf(&gen_random_instance(
                *m_rows, *n_cols, *deg_min, *deg_max, cli.seed,
            )?))),
        },
        Command::Iso {
            path,
            input,
            replica,
        } => cmd_iso(path, input, *replica),
        Command::Urn { sizes } => cmd_urn(cli, sizes),
        Command::Movielib { size, dir } => cmd_movielib(cli, size, dir),
        Command::Topk { data, k, strategy } => cmd_topk(cli, data, *k, (*strategy).into()),
        Command::Hist { data } => cmd_hist(cli, data),
        Command::Bench {
            task,
            sizes,
            repetitions,
            k,
            strategy,
            degree,
        } => {
            let sizes = parse_sizes(sizes)?;
            let seed = cli.seed;
            let (text, failed) = match task {
                TaskArg::Topk => sweep(
                    &TopKTask {
                        k: *k,
                        seed,
                        strategy: (*strategy).into(),
                    },
                    &sizes,
                    *repetitions,
                )?,
                TaskArg::Hist => sweep(&HistTask { seed }, &sizes, *repetitions)?,
                TaskArg::Match => sweep(
                    &MatchTask {
                        degree: *degree,
                        seed,
                    },
                    &sizes,
                    *repetitions,
                )?,
                TaskArg::Urn => sweep(&UrnTask { seed }, &sizes, *repetitions)?,
            };
            if failed > 0 {
                *deferred = Some(CliError::SweepFailures {
                    failed,
                    total: sizes.len(),
                });
            }
            Ok(Emit::Text(text))
        }
    }
}

fn cmd_stats(paths: &[PathBuf], input: &InputOpts) -> Result<Emit, CliError> {
    let mut json = Vec::new();
    let mut r = Report::new(&["instance", "nCols", "mRows", "mDens", "mCD"], Value::Null);
    for path in paths {
        let inst = load_instance(path, input)?;
        let s = compute_stats(&inst);
        r.push(vec![
            inst.name().to_string(),
            s.n_cols.to_string(),
            s.m_rows.to_string(),
            format!("{:.4}", s.m_dens),
            s.m_cd.to_string(),
        ]);
        json.push(json!({ "instance": inst.name(), "stats": s }));
    }
    r.json = Value::Array(json);
    Ok(Emit::Report(r))
}

fn cmd_match(paths: &[PathBuf], input: &InputOpts) -> Result<Emit, CliError> {
    let mut json = Vec::new();
    let mut r = Report::new(&["instance", "size", "nCols", "mP"], Value::Null);
    for path in paths {
        let inst = load_instance(path, input)?;
        let m = matching::max_matching(&inst)?;
        r.push(vec![
            inst.name().to_string(),
            m.size.to_string(),
            inst.n_cols().to_string(),
            format!("{:.2}", m.m_p),
        ]);
        json.push(json!({ "instance": inst.name(), "matching": m }));
    }
    r.json = Value::Array(json);
    Ok(Emit::Report(r))
}

fn cmd_cover(
    path: &Path,
    input: &InputOpts,
    solver: SolverArg,
    replica: u64,
    tie_tolerance: f64,
) -> Result<Emit, CliError> {
    let inst = load_instance(path, input)?;
    let model = CoverModel::new(&inst)?.with_tie_tolerance(tie_tolerance)?;
    let sol = match solver {
        SolverArg::Basic => model.basic(),
        SolverArg::Stoc => model.stoc(replica),
        SolverArg::Iso => model.iso(replica)?,
    };
    let order: Vec<String> = sol.order.iter().map(|c| (c + 1).to_string()).collect();
    let mut r = Report::new(
        &["instance", "replicaId", "value", "nOps", "coord", "order"],
        json!({ "instance": inst.name(), "solution": sol }),
    );
    r.push(vec![
        inst.name().to_string(),
        sol.replica_id.to_string(),
        format!("{:.2}", sol.value),
        sol.n_ops.to_string(),
        sol.coord_string(),
        order.join(";"),
    ]);
    Ok(Emit::Report(r))
}

struct DistOpts {
    solver: Solver,
    bkv: Option<f64>,
    tie_tolerance: f64,
    histogram: bool,
    buckets: bool,
}

fn bkv_for(
    registry: &BkvRegistry,
    inst: &BigraphInstance,
    explicit: Option<f64>,
) -> Result<Option<f64>, CliError> {
    match explicit {
        Some(b) if !(b > 0.0 && b.is_finite()) => {
            Err(experiments::ExperimentError::NonPositiveBkv(b).into())
        }
        Some(b) => Ok(Some(b)),
        None => Ok(registry.lookup(inst)),
    }
}

fn histogram_report(summaries: &[DistributionSummary]) -> Report {
    let mut r = Report::new(
        &["instance", "numSeeds", "value", "count"],
        to_json(summaries),
    );
    for s in summaries {
        for b in &s.histogram {
            r.push(vec![
                s.instance_name.clone(),
                s.num_seeds.to_string(),
                b.value.to_string(),
                b.count.to_string(),
            ]);
        }
    }
    r
}

fn cmd_dist(
    cli: &Cli,
    paths: &[PathBuf],
    input: &InputOpts,
    opts: &DistOpts,
) -> Result<Emit, CliError> {
    if opts.bkv.is_some() && paths.len() > 1 {
        return Err(CliError::Usage("--bkv applies to a single input".into()));
    }
    let registry = BkvRegistry::from_env()?;
    let config = DistributionConfig {
        num_seeds: cli.seeds,
        solver: opts.solver,
        seed_mode: seed_mode(cli),
    };
    let mut summaries = Vec::new();
    for path in paths {
        let inst = load_instance(path, input)?;
        let model = CoverModel::new(&inst)?.with_tie_tolerance(opts.tie_tolerance)?;
        let bkv = bkv_for(&registry, &inst, opts.bkv)?;
        summaries.push(run_with_model(&model, &config, bkv)?);
    }
    if opts.histogram {
        return Ok(Emit::Report(histogram_report(&summaries)));
    }
    let buckets = if opts.buckets {
        Some(ratio_bucket_report(&summaries)?)
    } else {
        None
    };
    let mut r = Report::new(
        &["instance", "numSeeds", "stats", "bkv", "ratios"],
        json!({ "summaries": summaries, "buckets": buckets }),
    );
    for s in &summaries {
        r.push(vec![
            s.instance_name.clone(),
            s.num_seeds.to_string(),
            s.stats_string(),
            s.bkv.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
            s.ratio_string().unwrap_or_else(|| "-".into()),
        ]);
    }
    if let (Some(b), Format::Table) = (buckets, cli.format) {
        r.push(vec![format!(
            "ratio bands: =1.00 {}, (1.00,1.10] {}, >1.10 {}, <1.00 {}",
            b.optimal, b.near, b.far, b.below_bkv
        )]);
    }
    Ok(Emit::Report(r))
}

fn cmd_converge(
    cli: &Cli,
    path: &Path,
    input: &InputOpts,
    solver: Solver,
    counts: &[usize],
) -> Result<Emit, CliError> {
    let inst = load_instance(path, input)?;
    let registry = BkvRegistry::from_env()?;
    let bkv = registry.lookup(&inst);
    let summaries = converge_check(&inst, counts, solver, seed_mode(cli), bkv)?;
    let mut r = Report::new(
        &["instance", "numSeeds", "value", "ratio", "count", "frequency"],
        to_json(&summaries),
    );
    for s in &summaries {
        for b in &s.histogram {
            r.push(vec![
                s.instance_name.clone(),
                s.num_seeds.to_string(),
                b.value.to_string(),
                bkv.map(|k| format!("{:.2}", experiments::display_ratio(b.value, k)))
                    .unwrap_or_else(|| "-".into()),
                b.count.to_string(),
                format!("{:.4}", b.count as f64 / s.num_seeds as f64),
            ]);
        }
    }
    Ok(Emit::Report(r))
}

fn cmd_ub(
    path: Option<&Path>,
    input: &InputOpts,
    bkv: Option<f64>,
    mcd: Option<usize>,
) -> Result<Emit, CliError> {
    let (name, bkv, mcd) = match path {
        Some(p) => {
            let inst = load_instance(p, input)?;
            let registry = BkvRegistry::from_env()?;
            let bkv = bkv_for(&registry, &inst, bkv)?.ok_or_else(|| {
                CliError::Usage(format!(
                    "no best-known value for `{}`; pass --bkv",
                    inst.registry_key()
                ))
            })?;
            let mcd = mcd.unwrap_or(compute_stats(&inst).m_cd);
            (inst.name().to_string(), bkv, mcd)
        }
        None => match (bkv, mcd) {
            (Some(b), Some(d)) => ("-".to_string(), b, d),
            _ => {
                return Err(CliError::Usage(
                    "ub needs an instance path or both --bkv and --mcd".into(),
                ))
            }
        },
    };
    let hb = HarmonicBound::new(mcd, bkv)?;
    let mut r = Report::new(
        &["instance", "mCD", "H", "bkv", "ub"],
        json!({ "instance": name, "bkv": bkv, "bound": hb }),
    );
    r.push(vec![
        name,
        mcd.to_string(),
        format!("{:.3}", hb.h_d),
        bkv.to_string(),
        format!("{:.2}", hb.ub),
    ]);
    Ok(Emit::Report(r))
}

fn cmd_iso(path: &Path, input: &InputOpts, replica: u64) -> Result<Emit, CliError> {
    let inst = load_instance(path, input)?;
    inst.require_unate()?;
    let (iso, perm) = gen_isomorph(&inst, replica)?;
    let text = write_cnf(&iso);
    let perm: Vec<String> = perm.to_one_based().iter().map(|p| p.to_string()).collect();
    // the permutation travels as a comment right after the name line
    let (first, rest) = text.split_once('\n').unwrap_or((&text, ""));
    Ok(Emit::Text(format!("{first}\nc permutation {}\n{rest}", perm.join(" "))))
}

fn cmd_urn(cli: &Cli, sizes: &str) -> Result<Emit, CliError> {
    let sizes = parse_sizes(sizes)?;
    let mut rows = Vec::new();
    let mut r = Report::new(&["urnSize", "numTrials", "seed", "fraction", "expected"], Value::Null);
    for &n in &sizes {
        let fraction = urn_trial(n, n, cli.seed)?;
        let expected = 1.0 - (1.0 - 1.0 / n as f64).powf(n as f64);
        r.push(vec![
            n.to_string(),
            n.to_string(),
            cli.seed.to_string(),
            format!("{fraction:.6}"),
            format!("{expected:.6}"),
        ]);
        rows.push(json!({ "urnSize": n, "numTrials": n, "seed": cli.seed, "fraction": fraction, "expected": expected }));
    }
    r.json = Value::Array(rows);
    Ok(Emit::Report(r))
}

fn cmd_movielib(cli: &Cli, size: &str, dir: &Path) -> Result<Emit, CliError> {
    let size = single_size(size)?;
    let (movies, watches) = gen_movielib(size, cli.seed);
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let movies_path = dir.join("movies.csv");
    let watches_path = dir.join("watches.csv");
    let csv_err = |path: &Path, e: csv::Error| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let f = fs::File::create(&movies_path).map_err(io_err(&movies_path))?;
    write_movies_csv(&movies, f).map_err(|e| csv_err(&movies_path, e))?;
    let f = fs::File::create(&watches_path).map_err(io_err(&watches_path))?;
    write_watches_csv(&watches, f).map_err(|e| csv_err(&watches_path, e))?;
    let mut r = Report::new(&["file", "records"], Value::Null);
    r.push(vec![movies_path.display().to_string(), movies.len().to_string()]);
    r.push(vec![watches_path.display().to_string(), watches.len().to_string()]);
    r.json = json!({
        "movies": { "path": movies_path, "records": movies.len() },
        "watches": { "path": watches_path, "records": watches.len() },
    });
    Ok(Emit::Report(r))
}

fn cmd_topk(
    cli: &Cli,
    data: &MovieInput,
    k: usize,
    strategy: AggregationStrategy,
) -> Result<Emit, CliError> {
    let (movies, watches) = load_movielib(data, cli.seed)?;
    let top = topk_movies(&movies, &watches, k, strategy)?;
    let mut r = Report::new(&["movieID", "watchCount"], to_json(&top));
    for e in &top.entries {
        r.push(vec![e.movie_id.clone(), e.watch_count.to_string()]);
    }
    Ok(Emit::Report(r))
}

fn cmd_hist(cli: &Cli, data: &MovieInput) -> Result<Emit, CliError> {
    let (_, watches) = load_movielib(data, cli.seed)?;
    let hist = watch_histogram(&watches);
    let mut r = Report::new(&["watchCount", "numMovies"], to_json(&hist));
    for (i, n) in &hist {
        r.push(vec![i.to_string(), n.to_string()]);
    }
    Ok(Emit::Report(r))
}

/// Sweep CSV plus the number of failed sizes; failures go to stderr.
fn sweep<T: PhasedTask>(
    task: &T,
    sizes: &[usize],
    repetitions: usize,
) -> Result<(String, usize), CliError> {
    let rows = asymptotic_sweep(task, sizes, repetitions)?;
    let mut failed = 0;
    for row in &rows {
        if let Err(e) = &row.result {
            eprintln!("warning: {e}");
            failed += 1;
        }
    }
    Ok((bench::sweep_csv(&rows), failed))
}
