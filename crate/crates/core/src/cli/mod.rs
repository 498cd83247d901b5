//! The `numtope` command line.
//!
//! Data goes to stdout or the named output files; diagnostics and progress go
//! to stderr through `log`. Exit codes: 0 success, 1 verification mismatch
//! (or an internal failure), 2 usage, 3 capability limit, 4 I/O.

pub mod checkpoint;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith::decimal_render;
use crate::constants::{correlation_estimate, ratio_to_e, stability_reference, volume_partial_sums};
use crate::error::{Error, Result};
use crate::metrics::{
    f_vector, h_star, metrics_record, metrics_record_of, MetricsConfig, MetricsRecord,
};
use crate::numsys::{SubsetKind, SubsetSpec};
use crate::refdata::{compare, load_reference, ComparisonReport, TableId, VerifySummary};
use crate::sequence::{subset_polytope, PolytopeSequence};

use checkpoint::{CheckpointLine, CheckpointWriter, SweepCheckpoint, ENGINE_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Header of sweep CSV files and `props --format csv`.
pub const CSV_HEADER: &str =
    "N,diameter,dim,Vol,n_vertices,n_edges,n_facets,facet_width,vol_fraction";

#[derive(Debug, Parser)]
#[command(name = "numtope", version, about = "Lattice polytopes of natural numbers")]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    /// Dimension cap for lattice-point enumeration; overrides NUMTOPE_ENUM_DIM_LIMIT.
    #[arg(long, global = true)]
    pub enum_dim_limit: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct SubsetArgs {
    /// Which naturals contribute lattice points.
    #[arg(long, default_value = "naturals", value_parser = parse_subset)]
    pub subset: SubsetKind,

    /// File of members (one per line, ascending, `#` comments); implies an explicit list.
    #[arg(long, conflicts_with = "subset")]
    pub list: Option<PathBuf>,
}

impl SubsetArgs {
    fn spec(&self) -> Result<SubsetSpec> {
        match (&self.list, self.subset) {
            (Some(path), _) => SubsetSpec::from_list_file(path),
            (None, SubsetKind::ExplicitList) => {
                Err(Error::domain("explicit-list needs --list FILE"))
            }
            (None, kind) => Ok(SubsetSpec::preset(kind)),
        }
    }
}

fn parse_subset(s: &str) -> std::result::Result<SubsetKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_table(s: &str) -> std::result::Result<TableId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    VertexRatio,
    Volume,
    Correlation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Properties of one polytope.
    Props {
        n: u64,
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also compute the h*-vector and interior count (JSON output).
        #[arg(long)]
        hstar: bool,
        /// Also compute the f-vector (JSON output).
        #[arg(long)]
        fvector: bool,
    },
    /// Properties for every member in a range, written as CSV.
    Sweep {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads. With 1 the polytopes are grown incrementally; otherwise
        /// each is built from scratch in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSONL checkpoint; completed values are skipped on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        hstar: bool,
        #[arg(long)]
        fvector: bool,
    },
    /// h*-vector of P(N), up to its degree.
    Hstar {
        n: u64,
        #[command(flatten)]
        subset: SubsetArgs,
    },
    /// f-vector of P(N).
    Fvector {
        n: u64,
        #[command(flatten)]
        subset: SubsetArgs,
        /// Give up after this many faces.
        #[arg(long, default_value_t = crate::metrics::DEFAULT_FACE_LIMIT)]
        face_limit: usize,
    },
    /// Exact partial volume sum over a subset.
    Sum {
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long)]
        upto: u64,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        /// Also print the sum divided by e.
        #[arg(long)]
        ratio_e: bool,
        /// Skip the digit-stability comparison against a 25% larger bound.
        #[arg(long)]
        no_stability: bool,
    },
    /// Compare computed properties with the reference tables.
    Verify {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        subset: SubsetArgs,
        /// Tables to check (repeatable); defaults to every table covering the subset.
        #[arg(long = "table", value_parser = parse_table)]
        tables: Vec<TableId>,
        /// Take records from this checkpoint where present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Tab-separated series for plotting.
    Plotdata {
        #[arg(value_enum)]
        kind: PlotKind,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        subset: SubsetArgs,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::MissingRow(_) => EXIT_USAGE,
        Error::Capability(_) => EXIT_CAPABILITY,
        Error::Io { .. } => EXIT_IO,
        Error::Internal(_) | Error::Reference { .. } => EXIT_MISMATCH,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// data to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            log::error!("{e}");
            eprintln!("numtope: {e}");
            exit_code(&e)
        }
    }
}

fn config(cli: &Cli) -> Result<MetricsConfig> {
    let mut cfg = MetricsConfig::from_env()?;
    if let Some(limit) = cli.enum_dim_limit {
        cfg.enumeration_dim_limit = limit;
    }
    Ok(cfg)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let base = config(cli)?;
    match &cli.command {
        Command::Props {
            n,
            subset,
            format,
            hstar,
            fvector,
        } => {
            if *n == 0 {
                return Err(Error::domain("N must be at least 1"));
            }
            let spec = subset.spec()?;
            let cfg = MetricsConfig {
                ehrhart: *hstar,
                faces: *fvector,
                ..base
            };
            let p = subset_polytope(&spec, *n)?;
            if *hstar && p.dim() > cfg.enumeration_dim_limit {
                h_star(&p, cfg.enumeration_dim_limit)?;
            }
            let rec = metrics_record_of(spec.kind(), *n, &p, &cfg)?;
            let text = match format {
                Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&rec)),
                Format::Json => format!("{}\n", to_json(&rec)?),
            };
            emit(out, &text)?;
        }
        Command::Sweep {
            from,
            to,
            subset,
            out: path,
            jobs,
            checkpoint,
            hstar,
            fvector,
        } => {
            let cfg = MetricsConfig {
                ehrhart: *hstar,
                faces: *fvector,
                ..base
            };
            let spec = subset.spec()?;
            let records = sweep(&spec, *from, *to, *jobs, checkpoint.as_deref(), &cfg)?;
            let mut text = String::from(CSV_HEADER);
            text.push('\n');
            for r in records.values() {
                text.push_str(&csv_row(r));
                text.push('\n');
            }
            write_atomically(path, &text)?;
            log::info!("wrote {} rows to {}", records.len(), path.display());
        }
        Command::Hstar { n, subset } => {
            let p = subset_polytope(&subset.spec()?, *n)?;
            let h = h_star(&p, base.enumeration_dim_limit)?;
            emit(out, &format!("{}\n", join(h.trimmed())))?;
        }
        Command::Fvector {
            n,
            subset,
            face_limit,
        } => {
            let p = subset_polytope(&subset.spec()?, *n)?;
            let f = f_vector(&p, *face_limit)?;
            emit(out, &format!("{}\n", join(&f.0)))?;
        }
        Command::Sum {
            subset,
            upto,
            digits,
            ratio_e,
            no_stability,
        } => {
            let spec = subset.spec()?;
            emit(out, &sum_report(&spec, *upto, *digits, *ratio_e, !*no_stability)?)?;
        }
        Command::Verify {
            from,
            to,
            subset,
            tables,
            checkpoint,
            json,
            jobs,
        } => {
            let spec = subset.spec()?;
            let (text, reports) =
                verify(&spec, *from, *to, tables, checkpoint.as_deref(), *jobs, &base)?;
            emit(out, &text)?;
            if let Some(path) = json {
                let body = serde_json::json!({
                    "summary": VerifySummary::of(&reports),
                    "reports": reports,
                });
                write_atomically(path, &format!("{body:#}\n"))?;
            }
            if reports.iter().any(|r| !r.is_clean()) {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Plotdata {
            kind,
            from,
            to,
            subset,
            out: path,
            digits,
        } => {
            let text = plotdata(*kind, &subset.spec()?, *from, *to, *digits)?;
            match path {
                Some(p) => write_atomically(p, &text)?,
                None => emit(out, &text)?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn to_json(r: &MetricsRecord) -> Result<String> {
    serde_json::to_string(r).map_err(|e| Error::internal(e.to_string()))
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// One CSV row in the [`CSV_HEADER`] layout; blank cells stay empty.
pub fn csv_row(r: &MetricsRecord) -> String {
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(T::to_string).unwrap_or_default()
    }
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.n,
        cell(&r.diameter),
        r.dim,
        r.normalized_volume,
        r.n_vertices,
        cell(&r.n_edges),
        cell(&r.n_facets),
        cell(&r.facet_width),
        r.euclidean_volume
    )
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::domain(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(Error::domain("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::internal(e.to_string()))
}

/// Records for every subset member in `from..=to`, sorted by `N`.
///
/// With `jobs == 1` one polytope is grown through the range; otherwise each
/// member's polytope is built independently on a pool of `jobs` threads.
/// Both give identical records.
pub fn sweep(
    subset: &SubsetSpec,
    from: u64,
    to: u64,
    jobs: usize,
    checkpoint: Option<&Path>,
    cfg: &MetricsConfig,
) -> Result<BTreeMap<u64, MetricsRecord>> {
    if from == 0 || from > to {
        return Err(Error::domain(format!("bad range {from}..{to}")));
    }
    let pool = thread_pool(jobs)?;
    let key = subset.key();
    let wanted: Vec<u64> = subset
        .members_up_to(to)?
        .into_iter()
        .filter(|&m| m >= from)
        .collect();
    let (mut done, writer) = match checkpoint {
        Some(path) => {
            let cp = SweepCheckpoint::load(path)?;
            if cp.discarded > 0 {
                log::warn!("{}: dropped {} unusable lines", path.display(), cp.discarded);
            }
            let done = cp.matching(&key, cfg.ehrhart, cfg.faces);
            (done, Some(Mutex::new(CheckpointWriter::open(path, &cp)?)))
        }
        None => (BTreeMap::new(), None),
    };
    let todo: Vec<u64> = wanted.iter().copied().filter(|m| !done.contains_key(m)).collect();
    log::info!("{} of {} values already computed", wanted.len() - todo.len(), wanted.len());
    let line = |rec: &MetricsRecord| CheckpointLine {
        version: ENGINE_VERSION.to_string(),
        subset: key.clone(),
        ehrhart: cfg.ehrhart,
        faces: cfg.faces,
        record: rec.clone(),
    };
    let record_done = |rec: &MetricsRecord| -> Result<()> {
        if let Some(w) = &writer {
            w.lock()
                .map_err(|_| Error::internal("checkpoint lock poisoned"))?
                .append(&line(rec))?;
        }
        log::debug!("N = {} done", rec.n);
        Ok(())
    };
    let computed: Vec<MetricsRecord> = if jobs == 1 {
        let mut out = Vec::new();
        if let Some(&last) = todo.last() {
            let mut seq = PolytopeSequence::new(subset.clone());
            seq.advance_to(last, |m, p| {
                if todo.binary_search(&m).is_ok() {
                    let rec = metrics_record_of(subset.kind(), m, p, cfg)?;
                    record_done(&rec)?;
                    out.push(rec);
                }
                Ok(())
            })?;
        }
        out
    } else {
        pool.install(|| {
            todo.par_iter()
                .map(|&m| {
                    let rec = metrics_record(subset, m, cfg)?;
                    record_done(&rec)?;
                    Ok(rec)
                })
                .collect::<Result<Vec<_>>>()
        })?
    };
    for r in computed {
        done.insert(r.n, r);
    }
    done.retain(|n, _| wanted.binary_search(n).is_ok());
    Ok(done)
}

fn sum_report(
    subset: &SubsetSpec,
    upto: u64,
    digits: usize,
    ratio_e: bool,
    stability: bool,
) -> Result<String> {
    if upto == 0 || digits == 0 {
        return Err(Error::domain("--upto and --digits must be at least 1"));
    }
    let further = if stability { stability_reference(upto) } else { upto };
    let sums = volume_partial_sums(subset, further)?;
    let at = |n: u64| -> (usize, BigRational) {
        let upto_n: Vec<_> = sums.iter().take_while(|(m, _)| *m <= n).collect();
        let value = upto_n.last().map_or_else(|| BigRational::from_integer(0.into()), |(_, v)| v.clone());
        (upto_n.len(), value)
    };
    let (terms, value) = at(upto);
    let rendered = decimal_render(&value, digits);
    let mut s = format!(
        "subset\t{}\nupto\t{upto}\nterms\t{terms}\nfraction\t{value}\ndecimal\t{rendered}\n",
        subset.key()
    );
    if stability {
        let (_, later) = at(further);
        let other = decimal_render(&later, digits);
        let point = rendered.find('.').unwrap_or(rendered.len());
        let same = rendered.chars().zip(other.chars()).take_while(|(a, b)| a == b).count();
        let stable = same.saturating_sub(point + 1).min(digits);
        s.push_str(&format!(
            "stable_digits\t{stable}\t(heuristic: unchanged at upto = {further}; a partial sum, the limit is larger)\n"
        ));
    }
    if ratio_e {
        s.push_str(&format!("ratio_to_e\t{}\n", ratio_to_e(&value, digits)));
    }
    Ok(s)
}

/// Tables that list rows for `subset`.
fn default_tables(subset: SubsetKind) -> Vec<TableId> {
    match subset {
        SubsetKind::Naturals => vec![
            TableId::Table1_1,
            TableId::Table3_1,
            TableId::AppendixA,
            TableId::AppendixB,
        ],
        _ => vec![TableId::Table5_1],
    }
}

fn verify(
    subset: &SubsetSpec,
    from: u64,
    to: u64,
    tables: &[TableId],
    checkpoint: Option<&Path>,
    jobs: usize,
    base: &MetricsConfig,
) -> Result<(String, Vec<ComparisonReport>)> {
    let tables = if tables.is_empty() {
        default_tables(subset.kind())
    } else {
        tables.to_vec()
    };
    let loaded = tables
        .iter()
        .map(|&t| load_reference(t))
        .collect::<Result<Vec<_>>>()?;
    let mut wanted: Vec<u64> = loaded
        .iter()
        .flat_map(|t| t.covered(subset.kind()))
        .filter(|n| (from..=to).contains(n))
        .collect();
    wanted.sort_unstable();
    wanted.dedup();
    if wanted.is_empty() {
        return Err(Error::domain(format!(
            "no reference rows for {} in {from}..{to}",
            subset.key()
        )));
    }
    let mut records = match checkpoint {
        Some(path) => SweepCheckpoint::load(path)?.records_for(&subset.key()),
        None => BTreeMap::new(),
    };
    records.retain(|n, _| wanted.binary_search(n).is_ok());
    let missing: Vec<u64> = wanted.iter().copied().filter(|n| !records.contains_key(n)).collect();
    let listed = |id: TableId| -> Vec<u64> {
        loaded
            .iter()
            .filter(|t| t.id() == id)
            .flat_map(|t| t.covered(subset.kind()))
            .collect()
    };
    let (with_h, with_f) = (listed(TableId::Table3_1), listed(TableId::AppendixB));
    let pool = thread_pool(jobs)?;
    let fresh = pool.install(|| {
        missing
            .par_iter()
            .map(|&n| {
                // h* and f-vectors only where a requested table lists them
                let c = MetricsConfig {
                    ehrhart: with_h.contains(&n),
                    faces: with_f.contains(&n),
                    ..base.clone()
                };
                metrics_record(subset, n, &c)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    for r in fresh {
        records.insert(r.n, r);
    }
    let mut reports = Vec::new();
    for table in &loaded {
        let covered = table.covered(subset.kind());
        for (n, rec) in &records {
            if covered.contains(n) {
                reports.push(compare(rec, table)?);
            }
        }
    }
    let mut text = String::new();
    for r in &reports {
        for m in r.mismatches() {
            text.push_str(&format!(
                "MISMATCH {} N={} {}: expected {}, computed {}\n",
                r.table, r.n, m.field, m.expected, m.computed
            ));
        }
    }
    let summary = VerifySummary::of(&reports);
    text.push_str(&format!(
        "checked {} rows, {} fields: {} mismatches\n",
        summary.rows, summary.fields_checked, summary.mismatches
    ));
    for (reason, count) in &summary.skipped {
        text.push_str(&format!("skipped {reason} ({count} rows)\n"));
    }
    Ok((text, reports))
}

fn plotdata(kind: PlotKind, subset: &SubsetSpec, from: u64, to: u64, digits: usize) -> Result<String> {
    if from == 0 || from > to {
        return Err(Error::domain(format!("bad range {from}..{to}")));
    }
    let mut text = match kind {
        PlotKind::VertexRatio => "N\tvertex_ratio\n",
        PlotKind::Volume => "N\tvol\n",
        PlotKind::Correlation => "N\tVol\testimate\n",
    }
    .to_string();
    let mut seq = PolytopeSequence::new(subset.clone());
    seq.advance_to(to, |m, p| {
        if m < from {
            return Ok(());
        }
        let line = match kind {
            PlotKind::VertexRatio => {
                let q = BigRational::new(p.n_vertices().into(), p.lattice_points().len().into());
                format!("{m}\t{}\n", decimal_render(&q, digits))
            }
            PlotKind::Volume => {
                let vol = crate::metrics::euclidean_volume(p);
                format!("{m}\t{}\n", decimal_render(&vol, digits))
            }
            PlotKind::Correlation => {
                let estimate = if p.dim() == 0 || p.n_vertices() < 2 {
                    "-".to_string()
                } else {
                    format!("{:.6e}", correlation_estimate(p.n_vertices() as u64, p.dim()))
                };
                format!("{m}\t{}\t{estimate}\n", p.normalized_volume())
            }
        };
        text.push_str(&line);
        Ok(())
    })?;
    Ok(text)
}
