use rayon::prelude::*;
use serde::Serialize;

use super::pipeline::{Analyzer, ExtensionRecord, PipelineOptions};
use super::template::IndexedTemplate;
use super::MapTemplate;
use crate::group::ConcreteGroup;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// first tuple index (inclusive)
    pub start: u64,
    /// last tuple index (exclusive); all of `p^k` when unset
    pub end: Option<u64>,
    /// worker threads; 0 uses the global pool
    pub threads: usize,
    /// tuples per work unit
    pub chunk: u64,
    /// emit only fully valid records (counts still cover every tuple)
    pub valid_only: bool,
    pub pipeline: PipelineOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            start: 0,
            end: None,
            threads: 0,
            chunk: 4096,
            valid_only: false,
            pipeline: PipelineOptions::sweep(),
        }
    }
}

/// Tuples passing each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub start: u64,
    pub end: u64,
    pub total: u64,
    pub hom: u64,
    pub surj: u64,
    pub dppos: u64,
    pub ordp: u64,
}

impl SweepSummary {
    fn add(&mut self, r: &ExtensionRecord) {
        self.total += 1;
        self.hom += r.hom as u64;
        self.surj += r.surj as u64;
        self.dppos += r.dppos as u64;
        self.ordp += r.ordp as u64;
    }
}

/// Receives records in tuple order.
pub trait SweepSink {
    fn record(&mut self, index: u64, record: &ExtensionRecord) -> Result<()>;

    /// Every tuple below `next` has been processed and emitted.
    fn checkpoint(&mut self, _next: u64) -> Result<()> {
        Ok(())
    }
}

impl<F: FnMut(u64, &ExtensionRecord) -> Result<()>> SweepSink for F {
    fn record(&mut self, index: u64, record: &ExtensionRecord) -> Result<()> {
        self(index, record)
    }
}

/// The tuple at `index` in lexicographic order, first parameter most
/// significant.
pub fn tuple_at(index: u64, p: u32, k: usize) -> Vec<u32> {
    let mut t = vec![0u32; k];
    let mut x = index;
    for slot in t.iter_mut().rev() {
        *slot = (x % p as u64) as u32;
        x /= p as u64;
    }
    t
}

pub fn tuple_index(tuple: &[u32], p: u32) -> u64 {
    tuple.iter().fold(0u64, |acc, &n| acc * p as u64 + n as u64)
}

/// Runs the pipeline on every instance of `template` over the base group
/// `g`. Work is split into chunks processed in parallel; records reach the
/// sink in lexicographic order regardless of scheduling.
pub fn sweep<S: SweepSink>(template: &MapTemplate, g: &ConcreteGroup, opts: &SweepOptions, sink: &mut S) -> Result<SweepSummary> {
    let p = g.prime();
    let k = template.parameter_count();
    let total = template.tuple_count();
    let end = opts.end.unwrap_or(total).min(total);
    if opts.start > end {
        return Err(Error::InvalidParameter(format!("sweep range {}..{end} is empty", opts.start)));
    }
    let analyzer = Analyzer::new(g, template.base().clone(), opts.pipeline.clone());
    let indexed = IndexedTemplate::new(template, g);
    let chunk = opts.chunk.max(1);

    let run_chunk = |lo: u64| -> Result<(Vec<(u64, ExtensionRecord)>, SweepSummary)> {
        let hi = (lo + chunk).min(end);
        let mut out = Vec::new();
        let mut summary = SweepSummary::default();
        let mut images = Vec::with_capacity(g.rank());
        for idx in lo..hi {
            let tuple = tuple_at(idx, p, k);
            template.instantiate_indexed_into(&indexed, g, &tuple, &mut images);
            let (rec, _) = analyzer.analyze(&images, Some(tuple))?;
            summary.add(&rec);
            if !opts.valid_only || rec.fully_valid() {
                out.push((idx, rec));
            }
        }
        Ok((out, summary))
    };

    let pool = if opts.threads > 0 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?,
        )
    } else {
        None
    };
    let width = pool
        .as_ref()
        .map(|p| p.current_num_threads())
        .unwrap_or_else(rayon::current_num_threads) as u64;
    let batch = chunk * width * 4;

    let mut summary = SweepSummary {
        start: opts.start,
        end,
        ..Default::default()
    };
    let mut lo = opts.start;
    while lo < end {
        let hi = (lo + batch).min(end);
        let starts: Vec<u64> = (lo..hi).step_by(chunk as usize).collect();
        let work = || {
            starts
                .par_iter()
                .map(|&s| run_chunk(s))
                .collect::<Vec<_>>()
        };
        let results = match &pool {
            Some(pool) => pool.install(work),
            None => work(),
        };
        for res in results {
            let (records, part) = res?;
            summary.total += part.total;
            summary.hom += part.hom;
            summary.surj += part.surj;
            summary.dppos += part.dppos;
            summary.ordp += part.ordp;
            for (idx, rec) in &records {
                sink.record(*idx, rec)?;
            }
        }
        sink.checkpoint(hi)?;
        lo = hi;
    }
    Ok(summary)
}
