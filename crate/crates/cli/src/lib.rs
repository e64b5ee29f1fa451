//! Command-line front end. [`run`] takes the arguments and output streams
//! and returns the process exit code: 0 on success, 1 when validation or
//! lint finds errors or input cannot be read, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tripleseq::catalog::{
    fixtures, lint_catalog_with_reference, serialize_catalog, Catalog, CatalogEntry, Severity,
};
use tripleseq::gen::{enumerate_tts, pipeline_mts};
use tripleseq::iso::{is_self_converse, Canonical};
use tripleseq::orient::{enumerate_assignments, enumerate_orientations, orient_distinct};
use tripleseq::report::{report_with_progress, Report, ReportOptions, LONG_RUN_ORDER, REPORT_ELLS};
use tripleseq::seq::{deletion_experiment, enumerate, search, SearchMode};
use tripleseq::{underlying_tts, Design, Error, Kind, TwofoldTripleSystem};

pub const FIXTURES_ENV: &str = "TRIPLESEQ_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "tripleseq", version, about = "Twofold and Mendelsohn triple systems and their ℓ-good sequencings")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Tts,
    Mts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exists,
    Count,
    Least,
    Enumerate,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exists => SearchMode::Exists,
            ModeArg::Count => SearchMode::Count,
            ModeArg::Least => SearchMode::Least,
            ModeArg::Enumerate => SearchMode::Enumerate,
        }
    }
}

#[derive(Debug, Args)]
struct Source {
    /// Catalog file or directory of `*.txt` catalogs; the built-in catalog
    /// when omitted.
    #[arg(env = FIXTURES_ENV)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check pair coverage of every entry.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Validate entries and compare TTS tables with their MTS siblings.
    Lint {
        #[command(flatten)]
        source: Source,
    },
    /// Orientations of a TTS, one per isomorphism class.
    Orient {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        label: String,
        /// Every distinct orientation instead of one per class.
        #[arg(long)]
        all: bool,
    },
    /// Canonical form of an entry.
    Canon {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        label: String,
    },
    /// Generate all TTS(v) or MTS(v) up to isomorphism as catalog text.
    Enumerate {
        #[arg(long = "v")]
        v: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Required for order 10.
        #[arg(long)]
        long_run: bool,
    },
    /// Search an MTS for ℓ-good sequencings.
    Sequence {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        label: String,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Count)]
        mode: ModeArg,
    },
    /// Delete each triple in turn and count ℓ-good sequencings.
    DeleteExp {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        label: String,
        #[arg(long)]
        ell: usize,
    },
    /// Summary row for one order, with per-design results.
    Report {
        #[arg(long = "v")]
        v: usize,
        /// Start from the built-in catalog instead of enumerating.
        #[arg(long)]
        from_fixtures: bool,
        /// Allow TTS enumeration at order 10.
        #[arg(long)]
        long_run: bool,
    },
}

/// Failure classes that map to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let usage = e.chain().any(|c| {
            matches!(
                c.downcast_ref::<Error>(),
                Some(
                    Error::UnknownLabel(_)
                        | Error::WindowOutOfRange { .. }
                        | Error::InvalidOrder(_)
                        | Error::Mismatch(_)
                )
            )
        });
        if usage {
            Failure::Usage(e)
        } else {
            Failure::Data(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, out, err)),
            Err(e) => Err(Failure::Usage(anyhow!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Validate { source } => cmd_validate(&load(source)?, f, out),
        Command::Lint { source } => cmd_lint(&load(source)?, f, out),
        Command::Orient { source, label, all } => cmd_orient(&load(source)?, label, *all, f, out),
        Command::Canon { source, label } => cmd_canon(&load(source)?, label, f, out),
        Command::Enumerate { v, kind, long_run } => cmd_enumerate(*v, *kind, *long_run, f, out, err),
        Command::Sequence {
            source,
            label,
            ell,
            mode,
        } => cmd_sequence(&load(source)?, label, *ell, (*mode).into(), f, out),
        Command::DeleteExp { source, label, ell } => cmd_delete(&load(source)?, label, *ell, f, out),
        Command::Report {
            v,
            from_fixtures,
            long_run,
        } => {
            let opts = ReportOptions {
                from_fixtures: *from_fixtures,
                long_run: *long_run,
            };
            cmd_report(*v, opts, f, out, err)
        }
    }
}

fn load(source: &Source) -> Result<Catalog, Failure> {
    match &source.file {
        None => Ok(fixtures::all()),
        Some(path) => load_path(path).map_err(Failure::Data),
    }
}

fn load_path(path: &Path) -> anyhow::Result<Catalog> {
    if path.is_dir() {
        return Ok(fixtures::load_dir(path)?);
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Catalog::parse(&text).with_context(|| path.display().to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Data(anyhow!("writing output: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Data(e.into()))?;
    text.push('\n');
    emit(out, &text)
}

fn cmd_validate(cat: &Catalog, format: Format, out: &mut dyn Write) -> Outcome {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = false;
    for e in cat.iter() {
        let (valid, problems) = match e.validate() {
            Ok(r) => (r.valid, r.violations.iter().map(|v| v.to_string()).collect()),
            Err(x) => (false, vec![x.to_string()]),
        };
        failed |= !valid;
        let _ = writeln!(text, "{}: {}", e.label, if valid { "valid" } else { "invalid" });
        for p in &problems {
            let _ = writeln!(text, "  {p}");
        }
        rows.push(json!({ "label": e.label, "valid": valid, "violations": problems }));
    }
    match format {
        Format::Text => emit(out, &text)?,
        Format::Structured => emit_json(out, &rows)?,
    }
    Ok(i32::from(failed))
}

fn cmd_lint(cat: &Catalog, format: Format, out: &mut dyn Write) -> Outcome {
    let reference: Vec<CatalogEntry> = [3, 4, 7, 9, 10]
        .into_iter()
        .flat_map(|v| fixtures::mts(v).into_entries())
        .collect();
    let findings = lint_catalog_with_reference(cat.entries(), &reference);
    let failed = findings.iter().any(|f| f.severity == Severity::Error);
    match format {
        Format::Text => {
            let mut text = String::new();
            for f in &findings {
                let _ = writeln!(text, "{f}");
                if let Some(repair) = &f.repair {
                    let rows: Vec<String> = repair.iter().map(|b| b.to_string()).collect();
                    let _ = writeln!(text, "  repair: {}", rows.join(" "));
                }
            }
            let errors = findings.iter().filter(|f| f.severity == Severity::Error).count();
            let _ = writeln!(
                text,
                "{} entries, {errors} errors, {} warnings",
                cat.entries().len(),
                findings.len() - errors
            );
            emit(out, &text)?;
        }
        Format::Structured => emit_json(out, &findings)?,
    }
    Ok(i32::from(failed))
}

fn entry_tts(cat: &Catalog, label: &str) -> Result<TwofoldTripleSystem, Failure> {
    let e = cat.get(label)?;
    let t = match e.kind {
        Kind::Tts => e.to_tts()?,
        Kind::Mts => underlying_tts(&e.to_mts()?)?,
    };
    Ok(t)
}

fn cmd_orient(cat: &Catalog, label: &str, all: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let t = entry_tts(cat, label)?;
    let assignments = enumerate_assignments(&t)?.len();
    let systems = if all {
        enumerate_orientations(&t)?
    } else {
        orient_distinct(&t)?
    };
    let entries: Vec<CatalogEntry> = systems
        .iter()
        .enumerate()
        .map(|(i, m)| CatalogEntry::from_design(&Design::Mts(m.clone()), format!("{label}.o{}", i + 1)))
        .collect();
    match format {
        Format::Text => {
            let what = match (all, entries.len()) {
                (true, 1) => "distinct orientation",
                (true, _) => "distinct orientations",
                (false, 1) => "isomorphism class",
                (false, _) => "isomorphism classes",
            };
            let mut text = format!("# {label}: {assignments} valid assignments, {} {what}\n", entries.len());
            text.push_str(&serialize_catalog(&entries));
            emit(out, &text)?;
        }
        Format::Structured => emit_json(
            out,
            &json!({ "label": label, "assignments": assignments, "orientations": entries }),
        )?,
    }
    Ok(0)
}

fn cmd_canon(cat: &Catalog, label: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let e = cat.get(label)?;
    let d = e.to_design()?;
    let report = d.validate();
    if !report.valid {
        return Err(Failure::Data(anyhow!("{label}: {}", report.violations[0])));
    }
    let form = d.canonical_form();
    let entry = CatalogEntry::from_design(&form.to_design(), label);
    match format {
        Format::Text => {
            let mut text = serialize_catalog(std::slice::from_ref(&entry));
            if let Design::Mts(m) = &d {
                let _ = writeln!(text, "# self-converse: {}", is_self_converse(m));
            }
            emit(out, &text)?;
        }
        Format::Structured => emit_json(out, &entry)?,
    }
    Ok(0)
}

fn cmd_enumerate(
    v: usize,
    kind: KindArg,
    long_run: bool,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if v >= LONG_RUN_ORDER && !long_run {
        return Err(Failure::Usage(anyhow!("order {v} needs --long-run")));
    }
    let _ = writeln!(err, "enumerating TTS({v})");
    let entries: Vec<CatalogEntry> = match kind {
        KindArg::Tts => enumerate_tts(v)?
            .into_iter()
            .enumerate()
            .map(|(i, t)| CatalogEntry::from_design(&Design::Tts(t), format!("T{v}.g{}", i + 1)))
            .collect(),
        KindArg::Mts => pipeline_mts(v)?
            .into_iter()
            .enumerate()
            .map(|(i, m)| CatalogEntry::from_design(&Design::Mts(m), format!("M{v}.g{}", i + 1)))
            .collect(),
    };
    let _ = writeln!(err, "{} designs", entries.len());
    match format {
        Format::Text => emit(out, &serialize_catalog(&entries))?,
        Format::Structured => emit_json(out, &entries)?,
    }
    Ok(0)
}

fn cmd_sequence(
    cat: &Catalog,
    label: &str,
    ell: usize,
    mode: SearchMode,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let m = cat.mts(label)?;
    let report = search(&m, ell, mode)?;
    let listed = if mode == SearchMode::Enumerate {
        enumerate(&m, ell)?
    } else {
        Vec::new()
    };
    match format {
        Format::Text => {
            let mut text = String::new();
            for s in &listed {
                let _ = writeln!(text, "{s}");
            }
            let _ = writeln!(text, "{report}");
            if let Some(n) = report.count {
                let _ = writeln!(text, "Number of {ell}-good sequencing found: {n}");
            }
            if let Some(s) = &report.least {
                let _ = writeln!(text, "Lexicographic least {ell}-good sequencing : {s}");
            }
            emit(out, &text)?;
        }
        Format::Structured if mode == SearchMode::Enumerate => emit_json(
            out,
            &json!({
                "label": report.label,
                "ell": report.ell,
                "exists": report.exists,
                "count": report.count,
                "least": report.least,
                "sequencings": listed,
            }),
        )?,
        Format::Structured => emit_json(out, &report)?,
    }
    Ok(0)
}

fn cmd_delete(cat: &Catalog, label: &str, ell: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let m = cat.mts(label)?;
    let report = deletion_experiment(&m, ell)?;
    match format {
        Format::Text => {
            let mut text = format!("# {label} ell={ell}\n{:<12} {:>8}  least\n", "omitted", "count");
            for r in &report.rows {
                let least = r.least.as_ref().map_or("-".to_string(), |s| s.to_string());
                let _ = writeln!(text, "{:<12} {:>8}  {least}", r.omitted.to_string(), r.count);
            }
            emit(out, &text)?;
        }
        Format::Structured => emit_json(out, &report)?,
    }
    Ok(0)
}

fn render_report(r: &Report) -> String {
    let row = &r.row;
    let tts = row.nonisomorphic_tts.map_or("-".to_string(), |n| n.to_string());
    let mut text = String::new();
    let _ = writeln!(text, "{:>3} {:>5} {:>10} {:>5} {:>5} {:>5} {:>5}", "v", "TTS", "orientable", "MTS", "l=3", "l=4", "l=5");
    let [g3, g4, g5] = row.good_counts;
    let _ = writeln!(
        text,
        "{:>3} {:>5} {:>10} {:>5} {:>5} {:>5} {:>5}",
        row.v, tts, row.orientable_tts, row.nonisomorphic_mts, g3, g4, g5
    );
    if let Some(n) = r.strict_mts_count {
        let _ = writeln!(text, "# MTS classes without identifying converses: {n}");
    }
    for d in &r.designs {
        for (res, ell) in d.results.iter().zip(REPORT_ELLS) {
            let _ = writeln!(text, "{} ell={ell} {res}", d.label);
        }
    }
    text
}

fn cmd_report(v: usize, opts: ReportOptions, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let r = report_with_progress(v, opts, &mut |msg| {
        let _ = writeln!(err, "{msg}");
    })?;
    for w in &r.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match format {
        Format::Text => emit(out, &render_report(&r))?,
        Format::Structured => emit_json(out, &r)?,
    }
    Ok(0)
}
