use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// A table for CSV output: header plus rows of equal width.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Mismatch(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance of one invocation, written next to its outputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: u64,
    pub tool_version: String,
    pub started: String,
    pub finished: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

/// Where documents go and how notes are reported.
pub struct Ctx {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub quiet: bool,
    command: String,
    arguments: Vec<String>,
    started: chrono::DateTime<chrono::Utc>,
    inputs: Vec<FileDigest>,
    outputs: Vec<PathBuf>,
    stem: Option<String>,
}

impl Ctx {
    pub fn new(out: Option<PathBuf>, format: Format, seed: u64, quiet: bool, command: &str) -> CliResult<Self> {
        if let Some(dir) = &out {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        Ok(Ctx {
            out,
            format,
            seed,
            quiet,
            command: command.to_string(),
            arguments: std::env::args().skip(1).collect(),
            started: chrono::Utc::now(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            stem: None,
        })
    }

    pub fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    pub fn record_input(&mut self, path: &Path) -> CliResult<()> {
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_file(path)?,
        });
        Ok(())
    }

    /// Path of an output file, or `None` when writing to stdout.
    pub fn path_for(&mut self, file: &str) -> Option<PathBuf> {
        let dir = self.out.as_ref()?;
        Some(dir.join(file))
    }

    /// Registers a file written outside [`Ctx::emit_text`]; the first output
    /// names the manifest.
    pub fn register_output(&mut self, path: PathBuf, stem: &str) {
        if self.stem.is_none() {
            self.stem = Some(stem.to_string());
        }
        if !self.outputs.contains(&path) {
            self.outputs.push(path);
        }
    }

    /// Writes `text` to `<out>/<stem>.<ext>`, or to stdout.
    pub fn emit_text(&mut self, stem: &str, ext: &str, text: &str) -> CliResult<()> {
        match self.path_for(&format!("{stem}.{ext}")) {
            Some(path) => {
                fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
                self.register_output(path, stem);
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::io("<stdout>", e))?;
            }
        }
        Ok(())
    }

    /// Emits a document in the selected format.
    pub fn emit<T: Serialize>(&mut self, stem: &str, doc: &T, table: impl FnOnce() -> Table) -> CliResult<()> {
        match self.format {
            Format::Json => {
                let text = pretty(doc)?;
                self.emit_text(stem, "json", &text)
            }
            Format::Csv => {
                let text = table().to_csv()?;
                self.emit_text(stem, "csv", &text)
            }
        }
    }

    /// Writes `<tag>.<command>.manifest.json` when outputs went to a
    /// directory; `tag` is the first output's stem up to its first dot.
    pub fn finish(self) -> CliResult<()> {
        let (Some(dir), Some(stem)) = (&self.out, &self.stem) else {
            return Ok(());
        };
        let mut outputs = Vec::new();
        for path in &self.outputs {
            outputs.push(FileDigest {
                path: path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                sha256: sha256_file(path)?,
            });
        }
        let manifest = RunManifest {
            command: self.command.clone(),
            arguments: self.arguments.clone(),
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started: self.started.to_rfc3339(),
            finished: chrono::Utc::now().to_rfc3339(),
            inputs: self.inputs.clone(),
            outputs,
        };
        let tag = stem.split('.').next().unwrap_or(stem);
        let path = dir.join(format!("{tag}.{}.manifest.json", self.command));
        fs::write(&path, pretty(&manifest)?).map_err(|e| CliError::io(&path, e))
    }
}

pub fn pretty<T: Serialize>(doc: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub fn degree_string(cd: &std::collections::BTreeMap<u64, u64>) -> String {
    join(cd.iter().map(|(d, m)| format!("{d}:{m}")))
}
