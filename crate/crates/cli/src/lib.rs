//! The `orbitlab` command line: `analyze` for one staircase profile and
//! `batch` for a table over every complexity-one profile in a size range.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod booktest {}

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use orbitlab::gkm::build_gkm;
use orbitlab::orbitspace::{nerve, orbit_space_report, OrbitReport};
use orbitlab::permutohedron::vertex_csv;
use orbitlab::{HFun, Spectrum};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Malformed flags, unreadable input or an I/O failure.
pub const EXIT_USAGE: i32 = 1;
/// The profile is valid but outside the model (reducible, complexity != 1).
pub const EXIT_UNSUPPORTED: i32 = 2;

/// Environment variable capping the number of batch worker threads.
pub const THREADS_ENV: &str = "ORBITLAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "orbitlab",
    version,
    about = "Orbit spaces of complexity-one staircase manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyze one Hessenberg function.
    Analyze(AnalyzeArgs),
    /// Tabulate every complexity-one profile for a range of sizes.
    Batch(BatchArgs),
}

#[derive(clap::Args, Debug)]
pub struct AnalyzeArgs {
    /// Hessenberg function, e.g. `3,3,4,5,5`.
    #[arg(long = "h", value_name = "H")]
    pub h: HFun,
    /// Simple spectrum; defaults to `1,2,...,n`.
    #[arg(long, value_name = "LAMBDA")]
    pub lambda: Option<Spectrum>,
    /// Files to write, comma-separated.
    #[arg(long, value_enum, value_delimiter = ',', value_name = "TARGETS")]
    pub emit: Vec<Artifact>,
    /// Directory for emitted files.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(clap::Args, Debug)]
pub struct BatchArgs {
    /// Size range `a..b` (inclusive) or a single size.
    #[arg(long = "n", value_name = "RANGE")]
    pub n: SizeRange,
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Leave out the runtime column.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Artifact {
    #[value(name = "report.txt")]
    ReportTxt,
    #[value(name = "report.json")]
    ReportJson,
    #[value(name = "gkm.dot")]
    GkmDot,
    #[value(name = "gkm.json")]
    GkmJson,
    #[value(name = "nerve.dot")]
    NerveDot,
    #[value(name = "polytope.csv")]
    PolytopeCsv,
}

impl Artifact {
    pub fn file_name(self) -> &'static str {
        match self {
            Artifact::ReportTxt => "report.txt",
            Artifact::ReportJson => "report.json",
            Artifact::GkmDot => "gkm.dot",
            Artifact::GkmJson => "gkm.json",
            Artifact::NerveDot => "nerve.dot",
            Artifact::PolytopeCsv => "polytope.csv",
        }
    }
}

/// An inclusive range of sizes, written `4..7` or `5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected a size or a range a..b, got {s:?}");
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
            None => (s.trim(), s.trim()),
        };
        Ok(SizeRange {
            lo: lo.parse().map_err(|_| bad())?,
            hi: hi.parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// A failure with its exit status and a machine-readable code.
#[derive(Debug)]
pub struct CliError {
    pub status: i32,
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            status: EXIT_USAGE,
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        CliError::usage("io", format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(&a, stdout),
        Command::Batch(b) => batch(&b, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.status
        }
    }
}

fn spectrum_for(h: &HFun, lambda: &Option<Spectrum>) -> Result<Spectrum, CliError> {
    let lambda = lambda.clone().unwrap_or_else(|| Spectrum::standard(h.n()));
    lambda
        .check_len(h.n())
        .map_err(|e| CliError::usage(e.code(), e.to_string()))?;
    Ok(lambda)
}

pub fn analyze(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let lambda = spectrum_for(&args.h, &args.lambda)?;
    let report = orbit_space_report(&args.h, &lambda).map_err(|e| CliError {
        status: EXIT_UNSUPPORTED,
        code: e.code(),
        message: e.to_string(),
    })?;
    let text = report.to_text();
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::usage("io", e.to_string()))?;
    if args.emit.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let mut targets = args.emit.clone();
    targets.sort_by_key(|a| a.file_name());
    targets.dedup();
    for target in targets {
        let body = render(target, &report, &text)?;
        let path = args.out.join(target.file_name());
        fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}

fn render(target: Artifact, report: &OrbitReport, text: &str) -> Result<String, CliError> {
    let gkm = || {
        build_gkm(&report.h, &report.lambda).map_err(|e| CliError {
            status: EXIT_UNSUPPORTED,
            code: e.code(),
            message: e.to_string(),
        })
    };
    Ok(match target {
        Artifact::ReportTxt => text.to_string(),
        Artifact::ReportJson => pretty(&report.to_json()),
        Artifact::GkmDot => gkm()?.to_dot(),
        Artifact::GkmJson => pretty(&gkm()?.to_json()),
        Artifact::NerveDot => nerve(&report.special_facets).to_dot(),
        Artifact::PolytopeCsv => vertex_csv(&report.lambda),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// One batch row. `status` is `ok` or the error code of a failed report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchRow {
    pub n: usize,
    pub h: HFun,
    pub i0: usize,
    pub special_facets: String,
    pub boundary_components: String,
    pub cohomology_ranks: String,
    pub status: String,
    pub runtime_ms: u128,
}

pub const BATCH_HEADER: [&str; 8] = [
    "n",
    "h",
    "i0",
    "special_facets",
    "boundary_components",
    "cohomology_ranks",
    "status",
    "runtime_ms",
];

fn batch_row(h: HFun) -> BatchRow {
    let start = Instant::now();
    let result = orbit_space_report(&h, &Spectrum::standard(h.n()));
    let runtime_ms = start.elapsed().as_millis();
    let i0 = h.complexity_one_profile().unwrap_or(0);
    match result {
        Ok(r) => BatchRow {
            n: h.n(),
            i0,
            special_facets: r
                .special_by_color
                .iter()
                .map(|(c, k)| format!("{c}:{k}"))
                .collect::<Vec<_>>()
                .join(";"),
            boundary_components: r.boundary_count.to_string(),
            cohomology_ranks: r
                .cohomology_ranks()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(";"),
            status: "ok".into(),
            runtime_ms,
            h,
        },
        Err(e) => BatchRow {
            n: h.n(),
            i0,
            special_facets: String::new(),
            boundary_components: String::new(),
            cohomology_ranks: String::new(),
            status: e.code().into(),
            runtime_ms,
            h,
        },
    }
}

/// Computes the rows for `range`, ordered by `n` then `i0`.
pub fn batch_rows(range: SizeRange) -> Result<Vec<BatchRow>, CliError> {
    let profiles: Vec<HFun> = (range.lo.max(3)..=range.hi)
        .flat_map(HFun::enumerate_complexity_one)
        .collect();
    if profiles.is_empty() {
        return Err(CliError::usage(
            "empty_range",
            format!("no complexity-one profiles for n in {range} (profiles start at n = 3)"),
        ));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
    {
        pool = pool.num_threads(k);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::usage("threads", e.to_string()))?;
    Ok(pool.install(|| profiles.into_par_iter().map(batch_row).collect()))
}

pub fn write_batch_csv<W: Write>(rows: &[BatchRow], timing: bool, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let columns = if timing { 8 } else { 7 };
    out.write_record(&BATCH_HEADER[..columns])?;
    for r in rows {
        let mut record = vec![
            r.n.to_string(),
            r.h.to_string(),
            r.i0.to_string(),
            r.special_facets.clone(),
            r.boundary_components.clone(),
            r.cohomology_ranks.clone(),
            r.status.clone(),
        ];
        if timing {
            record.push(r.runtime_ms.to_string());
        }
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}

pub fn batch(args: &BatchArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = batch_rows(args.n)?;
    let timing = !args.no_timing;
    match &args.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_batch_csv(&rows, timing, file)
                .map_err(|e| CliError::usage("io", e.to_string()))?;
        }
        None => write_batch_csv(&rows, timing, stdout)
            .map_err(|e| CliError::usage("io", e.to_string()))?,
    }
    Ok(())
}
