use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use pgroup_core::catalog::{self, BuildRequest};
use pgroup_core::degrees::StrategyChoice;
use pgroup_core::extension::{sweep, DegreeMode, ExtensionRecord, PipelineOptions, SweepOptions, SweepSummary};
use pgroup_core::ConcreteGroup;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output::{degree_string, join, pretty, Ctx, Format, Table};

#[derive(Args, Clone, Debug)]
pub struct SweepArgs {
    /// templated catalog entry
    pub name: String,
    #[arg(long)]
    pub prime: Option<u32>,
    /// first tuple index (inclusive)
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    /// last tuple index (exclusive); the whole family when omitted
    #[arg(long)]
    pub end: Option<u64>,
    /// write only fully valid records
    #[arg(long)]
    pub valid_only: bool,
    /// continue from the resume marker in the output directory
    #[arg(long)]
    pub resume: bool,
    /// attach an invariant fingerprint to each valid record
    #[arg(long)]
    pub fingerprint: bool,
    /// degree strategy for valid records, or `none`
    #[arg(long, default_value = "counting")]
    pub strategy: String,
    /// tuples per parallel work unit
    #[arg(long, default_value_t = 4096)]
    pub chunk: u64,
    /// tuples between resume checkpoints
    #[arg(long, default_value_t = 65536)]
    pub checkpoint: u64,
}

/// Everything that must match for a resumed run to extend the same output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ResumeParams {
    entry: String,
    prime: u32,
    start: u64,
    end: u64,
    valid_only: bool,
    fingerprint: bool,
    strategy: String,
    format: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ResumeMarker {
    params: ResumeParams,
    /// first tuple index not yet written
    next: u64,
    /// length of the output file up to `next`
    bytes: u64,
    counts: Counts,
    complete: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Counts {
    total: u64,
    hom: u64,
    surj: u64,
    dppos: u64,
    ordp: u64,
    written: u64,
}

impl Counts {
    fn add(&mut self, s: &SweepSummary, written: u64) {
        self.total += s.total;
        self.hom += s.hom;
        self.surj += s.surj;
        self.dppos += s.dppos;
        self.ordp += s.ordp;
        self.written += written;
    }
}

#[derive(Clone, Debug, Serialize)]
struct SweepReport {
    entry: String,
    prime: u32,
    parameters: usize,
    family_size: u64,
    start: u64,
    end: u64,
    #[serde(flatten)]
    counts: Counts,
}

#[derive(Serialize)]
struct Line<'a> {
    index: u64,
    #[serde(flatten)]
    record: &'a ExtensionRecord,
}

const CSV_HEADER: [&str; 11] = ["index", "tuple", "hom", "surj", "dppos", "ordp", "alpha_order", "order", "dl", "lcs", "cd"];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn encode(format: Format, index: u64, r: &ExtensionRecord) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut line = serde_json::to_vec(&Line { index, record: r })?;
            line.push(b'\n');
            Ok(line)
        }
        Format::Csv => {
            let row = vec![
                index.to_string(),
                r.tuple.as_ref().map(join).unwrap_or_default(),
                r.hom.to_string(),
                r.surj.to_string(),
                r.dppos.to_string(),
                r.ordp.to_string(),
                opt(&r.alpha_order),
                opt(&r.order),
                opt(&r.dl),
                r.lcs.as_ref().map(join).unwrap_or_default(),
                r.cd.as_ref().map(degree_string).unwrap_or_default(),
            ];
            csv_line(&row)
        }
    }
}

fn csv_line<S: AsRef<[u8]>>(row: &[S]) -> CliResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(row)?;
    w.into_inner().map_err(|e| CliError::Mismatch(e.to_string()))
}

fn write_marker(path: &Path, marker: &ResumeMarker) -> CliResult<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, pretty(marker)?).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

enum Target {
    File { file: BufWriter<File>, path: PathBuf },
    Stdout(std::io::StdoutLock<'static>),
}

impl Target {
    fn write(&mut self, bytes: &[u8]) -> CliResult<()> {
        match self {
            Target::File { file, path } => file.write_all(bytes).map_err(|e| CliError::io(&*path, e)),
            Target::Stdout(s) => s.write_all(bytes).map_err(|e| CliError::io("<stdout>", e)),
        }
    }

    fn flush(&mut self) -> CliResult<()> {
        match self {
            Target::File { file, path } => file
                .flush()
                .and_then(|_| file.get_ref().sync_data())
                .map_err(|e| CliError::io(&*path, e)),
            Target::Stdout(s) => s.flush().map_err(|e| CliError::io("<stdout>", e)),
        }
    }
}

pub fn run_sweep(ctx: &mut Ctx, args: &SweepArgs) -> CliResult<()> {
    let mut req = BuildRequest::new(&args.name);
    req.prime = args.prime;
    let built = catalog::build(&req)?;
    let Some(template) = built.template.as_ref() else {
        return Err(CliError::Usage(format!("entry {} has no map template to sweep", built.entry.name)));
    };
    let family = template.tuple_count();
    let end = args.end.unwrap_or(family).min(family);
    if args.start > end {
        return Err(CliError::Usage(format!("empty sweep range {}..{end}", args.start)));
    }
    let degrees = match args.strategy.as_str() {
        "none" => DegreeMode::Skip,
        s => DegreeMode::Strategy(s.parse::<StrategyChoice>()?),
    };
    if args.resume && ctx.out.is_none() {
        return Err(CliError::Usage("--resume needs --out".into()));
    }
    let g = ConcreteGroup::from_arc(built.base.clone())?;
    let tag = format!("{}-p{}", built.entry.name, built.prime);
    let params = ResumeParams {
        entry: built.entry.name.to_string(),
        prime: built.prime,
        start: args.start,
        end,
        valid_only: args.valid_only,
        fingerprint: args.fingerprint,
        strategy: args.strategy.clone(),
        format: ctx.format.extension().to_string(),
    };
    let ext = match ctx.format {
        Format::Json => "jsonl",
        Format::Csv => "csv",
    };
    let stem = format!("{tag}.sweep");
    let data_path = ctx.path_for(&format!("{stem}.{ext}"));
    let marker_path = ctx.path_for(&format!("{stem}.resume.json"));

    let mut next = args.start;
    let mut counts = Counts::default();
    let mut done = false;
    let mut target = match (&data_path, &marker_path) {
        (Some(path), Some(mpath)) => {
            let previous = if args.resume && mpath.exists() {
                let text = fs::read_to_string(mpath).map_err(|e| CliError::io(mpath, e))?;
                let m: ResumeMarker = serde_json::from_str(&text)?;
                if m.params != params {
                    return Err(CliError::Usage(format!(
                        "resume marker {} was written with different parameters",
                        mpath.display()
                    )));
                }
                Some(m)
            } else {
                if args.resume {
                    ctx.note("no resume marker found; starting from the beginning");
                }
                None
            };
            let file = match &previous {
                Some(m) => {
                    let mut f = OpenOptions::new().write(true).open(path).map_err(|e| CliError::io(path, e))?;
                    f.set_len(m.bytes).map_err(|e| CliError::io(path, e))?;
                    f.seek(SeekFrom::End(0)).map_err(|e| CliError::io(path, e))?;
                    next = m.next;
                    counts = m.counts;
                    done = m.complete;
                    ctx.note(format!("resuming at tuple {next}"));
                    f
                }
                None => {
                    let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
                    if ctx.format == Format::Csv {
                        f.write_all(&csv_line(&CSV_HEADER)?).map_err(|e| CliError::io(path, e))?;
                    }
                    f
                }
            };
            ctx.register_output(path.clone(), &stem);
            Target::File {
                file: BufWriter::new(file),
                path: path.clone(),
            }
        }
        _ => {
            let mut out = Target::Stdout(std::io::stdout().lock());
            if ctx.format == Format::Csv {
                out.write(&csv_line(&CSV_HEADER)?)?;
            }
            out
        }
    };

    target.flush()?;
    let mut bytes = match &data_path {
        Some(p) => fs::metadata(p).map_err(|e| CliError::io(p, e))?.len(),
        None => 0,
    };
    let pipeline = PipelineOptions {
        top_order: Some(built.top_order),
        degrees,
        fingerprint: args.fingerprint,
        ..Default::default()
    };
    let window = args.checkpoint.max(1);
    if let Some(mpath) = &marker_path {
        if !done {
            write_marker(mpath, &ResumeMarker { params: params.clone(), next, bytes, counts, complete: false })?;
        }
    }
    while !done && next < end {
        let hi = (next + window).min(end);
        let opts = SweepOptions {
            start: next,
            end: Some(hi),
            threads: 0,
            chunk: args.chunk,
            valid_only: args.valid_only,
            pipeline: pipeline.clone(),
        };
        let mut written = 0u64;
        let mut failure = None;
        let format = ctx.format;
        let mut sink = |index: u64, r: &ExtensionRecord| -> pgroup_core::Result<()> {
            if failure.is_some() {
                return Ok(());
            }
            match encode(format, index, r).and_then(|line| {
                written += 1;
                bytes += line.len() as u64;
                target.write(&line)
            }) {
                Ok(()) => Ok(()),
                Err(e) => {
                    failure = Some(e);
                    Ok(())
                }
            }
        };
        let summary = sweep(template, &g, &opts, &mut sink)?;
        if let Some(e) = failure {
            return Err(e);
        }
        target.flush()?;
        counts.add(&summary, written);
        next = hi;
        if let Some(mpath) = &marker_path {
            write_marker(mpath, &ResumeMarker { params: params.clone(), next, bytes, counts, complete: next >= end })?;
        }
        ctx.note(format!("{next}/{end} tuples, {} valid", counts.ordp));
    }
    if let (Some(mpath), false) = (&marker_path, done) {
        write_marker(mpath, &ResumeMarker { params: params.clone(), next, bytes, counts, complete: true })?;
    }
    drop(target);

    let report = SweepReport {
        entry: built.entry.name.to_string(),
        prime: built.prime,
        parameters: template.parameter_count(),
        family_size: family,
        start: args.start,
        end,
        counts,
    };
    ctx.note(format!(
        "{tag}: {} tuples, hom {}, surj {}, dppos {}, valid {}",
        counts.total, counts.hom, counts.surj, counts.dppos, counts.ordp
    ));
    if ctx.out.is_some() {
        ctx.emit(&format!("{stem}.summary"), &report, || {
            let mut t = Table::new(["entry", "prime", "start", "end", "total", "hom", "surj", "dppos", "ordp", "written"]);
            t.push(vec![
                report.entry.clone(),
                report.prime.to_string(),
                report.start.to_string(),
                report.end.to_string(),
                counts.total.to_string(),
                counts.hom.to_string(),
                counts.surj.to_string(),
                counts.dppos.to_string(),
                counts.ordp.to_string(),
                counts.written.to_string(),
            ]);
            t
        })?;
    }
    Ok(())
}
