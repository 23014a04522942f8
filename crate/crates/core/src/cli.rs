//! The `graceful` command-line tool.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 usage or input error,
//! 3 capacity overflow, 4 I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::inverse::{trace_inversion, Chain, DecodeState, InverseError};
use crate::labelling::{label_all, Label, LabelRecord};
use crate::shape::{ShapeError, TreeShape};
use crate::verify::{
    brute_force_graceful, canonical_path_labelling, verify_graceful, StreamVerifier,
    VerificationReport, WeaklyAlphaReport, DEFAULT_BRUTE_FORCE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Longest path the canonical path oracle is consulted for.
pub const MAX_ORACLE_PATH: u64 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "graceful",
    version,
    about = "Graceful labelling of rooted symmetric trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label every vertex and write the records in breadth-first order.
    Label(LabelArgs),
    /// Decode a label back to its vertex.
    Invert(InvertArgs),
    /// Check gracefulness and the weak separator property.
    Verify(DegreeArgs),
    /// Compare against the path and brute-force oracles.
    OracleCompare(OracleArgs),
    /// Time streaming labelling plus verification.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct DegreeArgs {
    /// Daughter degree sequence, e.g. "2,3,4" ("" for a single vertex).
    #[arg(long = "degrees", value_name = "K1,K2,...")]
    flag: Option<String>,

    /// Same as --degrees.
    #[arg(value_name = "DEGREES")]
    positional: Option<String>,
}

impl DegreeArgs {
    fn text(&self) -> Result<&str, Failure> {
        match (&self.flag, &self.positional) {
            (Some(_), Some(_)) => Err(Failure::usage(
                "give the degree sequence once, not both positionally and with --degrees",
            )),
            (Some(t), None) | (None, Some(t)) => Ok(t),
            (None, None) => Err(Failure::usage("missing degree sequence")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Dot,
    None,
}

#[derive(Debug, Args)]
struct LabelArgs {
    #[command(flatten)]
    degrees: DegreeArgs,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Stream records into the verifier instead of writing them.
    #[arg(long)]
    verify_only: bool,
}

#[derive(Debug, Args)]
struct InvertArgs {
    /// Degree sequence, then the label (or the label alone with --degrees).
    #[arg(value_name = "ARGS", num_args = 0..=2)]
    positional: Vec<String>,

    #[arg(long = "degrees", value_name = "K1,K2,...")]
    degrees: Option<String>,

    #[arg(long = "label", short = 'm')]
    label: Option<u64>,

    /// Print every intermediate decoder state.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    degrees: DegreeArgs,

    /// Vertex cap for the brute-force search.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    cap: u64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    degrees: DegreeArgs,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ShapeError> for Failure {
    fn from(e: ShapeError) -> Self {
        let code = match e {
            ShapeError::Capacity { .. } => EXIT_CAPACITY,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Label(a) => cmd_label(&a, out),
        Command::Invert(a) => cmd_invert(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::OracleCompare(a) => cmd_oracle_compare(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    let flushed = out.flush().map_err(Failure::from);
    match result.and_then(|code| flushed.map(|()| code)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "graceful: {}", f.message);
            f.code
        }
    }
}

fn shape_from(args: &DegreeArgs) -> Result<TreeShape, Failure> {
    Ok(TreeShape::parse(args.text()?)?)
}

/// One serialised vertex row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub vertex: String,
    pub level: usize,
    pub label: u64,
    pub parent_label: Option<u64>,
    pub edge_label: Option<u64>,
}

impl From<&LabelRecord> for OutputRecord {
    fn from(r: &LabelRecord) -> Self {
        Self {
            vertex: r.vertex.to_string(),
            level: r.level(),
            label: r.label.get(),
            parent_label: r.parent_label.map(Label::get),
            edge_label: r.edge_label.map(|e| e.get()),
        }
    }
}

fn cmd_label(args: &LabelArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let shape = shape_from(&args.degrees)?;
    if args.verify_only || args.format == Format::None {
        let (report, weak, _) = stream_verify(&shape)?;
        return print_verification(&shape, &report, &weak, out);
    }
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("cannot create {}: {e}", path.display()),
            })?;
            let mut w = BufWriter::new(file);
            write_records(&shape, args.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(out);
            write_records(&shape, args.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn write_records(shape: &TreeShape, format: Format, w: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Table => write_table(shape, w),
        Format::Json => write_json(shape, w),
        Format::Csv => write_csv(shape, w),
        Format::Dot => write_dot(shape, w),
        Format::None => Ok(()),
    }
}

fn digits(n: u64) -> usize {
    n.checked_ilog10().map_or(1, |d| d as usize + 1)
}

fn write_table(shape: &TreeShape, w: &mut dyn Write) -> Result<(), Failure> {
    let ks = shape.degrees().as_slice();
    let deepest = 2 + ks.iter().map(|&k| digits(k - 1)).sum::<usize>() + ks.len().saturating_sub(1);
    let vw = deepest.max("vertex".len());
    let lw = digits(shape.levels() as u64).max("level".len());
    let nw = digits(shape.edge_count()).max("parent_label".len());
    writeln!(
        w,
        "{:<vw$}  {:>lw$}  {:>nw$}  {:>nw$}  {:>nw$}",
        "vertex", "level", "label", "parent_label", "edge_label"
    )?;
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_owned(), |x| x.to_string());
    for r in label_all(shape) {
        let o = OutputRecord::from(&r);
        writeln!(
            w,
            "{:<vw$}  {:>lw$}  {:>nw$}  {:>nw$}  {:>nw$}",
            o.vertex,
            o.level,
            o.label,
            opt(o.parent_label),
            opt(o.edge_label)
        )?;
    }
    Ok(())
}

fn write_json(shape: &TreeShape, w: &mut dyn Write) -> Result<(), Failure> {
    write!(
        w,
        "{{\"degree_sequence\":{},\"level_sizes\":{},\"vertex_count\":{},\"edge_count\":{},\"records\":[",
        serde_json::to_string(shape.degrees().as_slice())?,
        serde_json::to_string(shape.level_sizes())?,
        shape.vertex_count(),
        shape.edge_count()
    )?;
    for (i, r) in label_all(shape).enumerate() {
        w.write_all(if i == 0 { b"\n" } else { b",\n" })?;
        serde_json::to_writer(&mut *w, &OutputRecord::from(&r))?;
    }
    w.write_all(b"\n]}\n")?;
    Ok(())
}

fn write_csv(shape: &TreeShape, w: &mut dyn Write) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_writer(w);
    for r in label_all(shape) {
        writer.serialize(OutputRecord::from(&r))?;
    }
    writer.flush()?;
    Ok(())
}

fn write_dot(shape: &TreeShape, w: &mut dyn Write) -> Result<(), Failure> {
    writeln!(w, "digraph graceful {{")?;
    writeln!(w, "  // degrees: ({})", shape.degrees())?;
    for (i, r) in label_all(shape).enumerate() {
        writeln!(
            w,
            "  v{i} [label=\"{}\", tooltip=\"{}\"];",
            r.label, r.vertex
        )?;
        if let (Ok(parent), Some(edge)) = (r.vertex.parent(), r.edge_label) {
            let p = shape.bfs_index(&parent).expect("parent of a valid vertex");
            writeln!(w, "  v{p} -> v{i} [label=\"{edge}\"];")?;
        }
    }
    writeln!(w, "}}")?;
    Ok(())
}

fn stream_verify(
    shape: &TreeShape,
) -> Result<(VerificationReport, WeaklyAlphaReport, usize), Failure> {
    let mut verifier = StreamVerifier::new(shape);
    let bytes = verifier.bitmap_bytes();
    let internal = |e: crate::verify::VerifyError| Failure {
        code: EXIT_VERIFY_FAILED,
        message: e.to_string(),
    };
    for r in label_all(shape) {
        verifier.push(&r).map_err(internal)?;
    }
    let (report, interval) = verifier.finish().map_err(internal)?;
    Ok((report, interval.into_report(shape), bytes))
}

fn print_verification(
    shape: &TreeShape,
    report: &VerificationReport,
    weak: &WeaklyAlphaReport,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    writeln!(out, "degrees: ({})", shape.degrees())?;
    writeln!(
        out,
        "levels: {}  vertices: {}  edges: {}",
        shape.levels(),
        shape.vertex_count(),
        shape.edge_count()
    )?;
    let h: Vec<String> = shape.level_sizes().iter().map(u64::to_string).collect();
    writeln!(out, "level sizes h: ({})", h.join(","))?;
    writeln!(
        out,
        "graceful: {}",
        if report.passed() { "pass" } else { "FAIL" }
    )?;
    for c in &report.counterexamples {
        writeln!(out, "  violation: {c}")?;
    }
    if report.suppressed > 0 {
        writeln!(out, "  ... {} more violations", report.suppressed)?;
    }
    let mut ok = report.passed();
    if report.passed() {
        match weak.feasible_k_range {
            Some(range) => writeln!(out, "weakly alpha: feasible, k in {range}")?,
            None => writeln!(out, "weakly alpha: infeasible")?,
        }
        if let (Some(k), Some(holds)) = (weak.claimed_k, weak.claim_holds) {
            writeln!(
                out,
                "k = h_2 = {k}: {}",
                if holds { "in range" } else { "NOT in range" }
            )?;
            ok &= holds;
        }
        writeln!(
            out,
            "strict alpha: {}",
            if weak.strict_alpha_feasible {
                "feasible"
            } else {
                "infeasible"
            }
        )?;
    }
    writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_verify(args: &DegreeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let shape = shape_from(args)?;
    let (report, weak, _) = stream_verify(&shape)?;
    print_verification(&shape, &report, &weak, out)
}

fn cmd_invert(args: &InvertArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut pos = args.positional.iter();
    let degrees = match &args.degrees {
        Some(d) => d.as_str(),
        None => pos
            .next()
            .ok_or_else(|| Failure::usage("missing degree sequence"))?,
    };
    let m = match (args.label, pos.next()) {
        (Some(_), Some(_)) => return Err(Failure::usage("give the label once")),
        (Some(m), None) => m,
        (None, Some(text)) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::usage(format!("label {text:?} is not a non-negative integer")))?,
        (None, None) => return Err(Failure::usage("missing label")),
    };
    if pos.next().is_some() {
        return Err(Failure::usage("too many arguments"));
    }
    let shape = TreeShape::parse(degrees)?;
    let trace = trace_inversion(&shape, Label(m)).map_err(|e| match e {
        InverseError::OutOfRange { .. } => Failure::usage(e.to_string()),
        InverseError::Consistency { .. } => Failure {
            code: EXIT_VERIFY_FAILED,
            message: e.to_string(),
        },
    })?;
    if args.trace {
        for state in &trace {
            writeln!(out, "{}", describe_state(state))?;
        }
    }
    let last = trace.last().expect("trace is never empty");
    let vertex = last.vertex().expect("final state is resolved");
    writeln!(out, "{vertex} level {}", vertex.level())?;
    Ok(EXIT_OK)
}

fn describe_state(s: &DecodeState) -> String {
    let list = |d: &[u64]| d.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let status = match s.resolved {
        Some(Chain::Even) => "resolved (even chain)",
        Some(Chain::Odd) => "resolved (odd chain)",
        None => "continue",
    };
    format!(
        "level {}: m={} m'={} even=({}) r'={} odd=({}) r={} -> {status}",
        s.level,
        s.m,
        s.m_prime,
        list(&s.even.digits),
        s.even.remainder,
        list(&s.odd.digits),
        s.odd.remainder
    )
}

fn cmd_oracle_compare(args: &OracleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let shape = shape_from(&args.degrees)?;
    let n = shape.vertex_count();
    let use_path = shape.is_path() && n <= MAX_ORACLE_PATH;
    let use_brute = n <= args.cap;
    if !use_path && !use_brute {
        return Err(Failure::usage(format!(
            "tree has {n} vertices: above the brute-force cap of {} and not a path of at most {MAX_ORACLE_PATH} vertices",
            args.cap
        )));
    }
    let ours: Vec<u64> = label_all(&shape).map(|r| r.label.get()).collect();
    let mut ok = true;

    if use_path {
        let oracle = canonical_path_labelling(n);
        let matched = oracle == ours;
        ok &= matched;
        writeln!(
            out,
            "path oracle: {}",
            if matched { "exact match" } else { "MISMATCH" }
        )?;
        if !matched {
            writeln!(out, "  closed form: {ours:?}")?;
            writeln!(out, "  canonical:   {oracle:?}")?;
        }
    }
    if use_brute {
        let report = verify_graceful(&shape, label_all(&shape)).map_err(|e| Failure {
            code: EXIT_VERIFY_FAILED,
            message: e.to_string(),
        })?;
        ok &= report.passed();
        writeln!(
            out,
            "closed form: {}",
            if report.passed() {
                "valid graceful labelling"
            } else {
                "NOT graceful"
            }
        )?;
        let found =
            brute_force_graceful(&shape, args.cap).map_err(|e| Failure::usage(e.to_string()))?;
        match found {
            Some(labelling) => {
                let theirs: Vec<u64> = labelling.labels().map(Label::get).collect();
                let valid = verify_graceful(&shape, labelling.records()).is_ok_and(|r| r.passed());
                ok &= valid;
                let relation = if theirs == ours {
                    "the same labelling"
                } else {
                    "a different labelling"
                };
                writeln!(
                    out,
                    "brute force: found {relation} ({}): {theirs:?}",
                    if valid { "valid" } else { "INVALID" }
                )?;
            }
            None => {
                ok = false;
                writeln!(out, "brute force: no graceful labelling found")?;
            }
        }
    }
    writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let shape = shape_from(&args.degrees)?;
    let mut passed = true;
    let mut bytes = 0;
    let start = Instant::now();
    for _ in 0..args.reps {
        let (report, _, b) = stream_verify(&shape)?;
        passed &= report.passed();
        bytes = b;
    }
    let elapsed = start.elapsed();
    let per_rep = elapsed / u32::try_from(args.reps).unwrap_or(u32::MAX);
    let total_vertices = shape.vertex_count() as f64 * args.reps as f64;
    let rate = total_vertices / elapsed.as_secs_f64().max(f64::MIN_POSITIVE);
    writeln!(out, "degrees: ({})", shape.degrees())?;
    writeln!(
        out,
        "vertices: {}  repetitions: {}",
        shape.vertex_count(),
        args.reps
    )?;
    writeln!(
        out,
        "total: {:.3} ms  per repetition: {:.3} ms",
        elapsed.as_secs_f64() * 1e3,
        per_rep.as_secs_f64() * 1e3
    )?;
    writeln!(out, "throughput: {rate:.0} vertices/s")?;
    writeln!(
        out,
        "auxiliary memory: {bytes} bytes (two presence bitmaps)"
    )?;
    writeln!(
        out,
        "verification: {}",
        if passed { "pass" } else { "FAIL" }
    )?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
