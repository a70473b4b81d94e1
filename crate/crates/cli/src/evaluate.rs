use std::collections::BTreeMap;

use clap::Args;
use pgroup_core::catalog::{self, Basis, BuildRequest, Built, Expect};
use pgroup_core::degrees::{character_degrees, DegreeOptions, DegreeReport, StrategyChoice};
use pgroup_core::extension::{run_pipeline, DegreeMode, ExtensionRecord, PipelineOptions};
use pgroup_core::pc::PresentationFile;
use pgroup_core::ConcreteGroup;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::{join, Ctx, Table};

/// Selects a catalog entry and its parameters.
#[derive(Args, Clone, Debug)]
pub struct EntryArgs {
    /// catalog entry name (see `pgroup catalog`)
    pub name: String,
    #[arg(long)]
    pub prime: Option<u32>,
    /// size parameter for sized entries
    #[arg(long)]
    pub n: Option<usize>,
    /// base group variant for entries that have several
    #[arg(long)]
    pub variant: Option<String>,
    /// template parameters, comma separated
    #[arg(long, value_delimiter = ',')]
    pub tuple: Option<Vec<u32>>,
}

impl EntryArgs {
    pub fn request(&self) -> CliResult<BuildRequest> {
        let mut req = BuildRequest::new(&self.name);
        req.prime = self.prime;
        req.n = self.n;
        req.tuple = self.tuple.clone();
        if let Some(v) = &self.variant {
            req.variant = Some(v.parse()?);
        }
        Ok(req)
    }
}

/// File stem naming a build: entry, prime and any non-default parameters.
/// Tuple entries are joined with `_`.
pub fn tag(b: &Built) -> String {
    let mut t = format!("{}-p{}", b.entry.name, b.prime);
    if let Some(n) = b.n {
        t.push_str(&format!("-n{n}"));
    }
    if let Some(v) = b.variant {
        t.push('-');
        t.push_str(match v {
            catalog::NoritzschVariant::Exponent3 => "exponent3",
            catalog::NoritzschVariant::Literal => "literal",
        });
    }
    let default: Option<&[u32]> = match b.entry.name {
        "ex51" => Some(&catalog::EX51_TUPLE),
        "ex52" => Some(&catalog::EX52_TUPLE),
        _ => None,
    };
    if let Some(tuple) = b.tuple.as_deref().filter(|t| Some(*t) != default) {
        t.push_str("-t");
        t.push_str(&tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_"));
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: u64,
    pub exponent: u64,
    pub derived_length: usize,
    pub derived_orders: Vec<u64>,
    pub lcs_orders: Vec<u64>,
    pub class: usize,
    pub center_order: u64,
}

impl GroupSummary {
    pub fn of(g: &ConcreteGroup) -> Self {
        GroupSummary {
            order: g.order() as u64,
            exponent: g.exponent(),
            derived_length: g.derived_length(),
            derived_orders: g.derived_series().iter().map(|s| s.order() as u64).collect(),
            lcs_orders: g.lower_central_series().iter().map(|s| s.order() as u64).collect(),
            class: g.nilpotence_class(),
            center_order: g.center().order() as u64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaSummary {
    pub images: String,
    pub automorphism: bool,
    pub order: Option<u64>,
    /// relations the images fail, as `relation: lhs != rhs`
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// `stated`, `derived`, or `computed` for internal checks
    pub basis: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionSummary {
    #[serde(flatten)]
    pub group: GroupSummary,
    pub degrees: Option<DegreeReport>,
    /// degree -> characters of that degree not containing `P''` in the kernel
    pub top_layer: Option<BTreeMap<u64, u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub entry: String,
    pub tag: String,
    pub prime: u32,
    pub n: Option<usize>,
    pub variant: Option<catalog::NoritzschVariant>,
    pub tuple: Option<Vec<u32>>,
    pub top_order: u64,
    pub base: GroupSummary,
    pub alpha: AlphaSummary,
    pub record: ExtensionRecord,
    pub extension: Option<ExtensionSummary>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip)]
    pub presentations: Option<(PresentationFile, Option<PresentationFile>)>,
}

impl Evaluation {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["check", "basis", "expected", "actual", "passed"]);
        for c in &self.checks {
            t.push(vec![
                c.name.clone(),
                c.basis.clone(),
                c.expected.to_string(),
                c.actual.to_string(),
                c.passed.to_string(),
            ]);
        }
        t
    }
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Stated => "stated",
        Basis::Derived => "derived",
    }
}

fn expect<T: Serialize + PartialEq>(checks: &mut Vec<Check>, name: &str, exp: &Option<Expect<T>>, actual: Option<T>) {
    let Some(exp) = exp else { return };
    let passed = actual.as_ref() == Some(&exp.value);
    checks.push(Check {
        name: name.to_string(),
        basis: basis_name(exp.basis).to_string(),
        expected: serde_json::to_value(&exp.value).expect("serializes"),
        actual: serde_json::to_value(&actual).expect("serializes"),
        passed,
    });
}

fn computed(checks: &mut Vec<Check>, name: &str, expected: Value, actual: Value) {
    let passed = expected == actual;
    checks.push(Check {
        name: name.to_string(),
        basis: "computed".into(),
        expected,
        actual,
        passed,
    });
}

/// Characters of `g` per degree minus those of `g / g''`.
pub fn top_layer(g: &ConcreteGroup, full: &DegreeReport, strategy: StrategyChoice) -> CliResult<Option<BTreeMap<u64, u64>>> {
    let series = g.derived_series();
    let Some(second) = series.get(2).filter(|s| !s.is_trivial()) else {
        return Ok(None);
    };
    let q = g.quotient(second)?;
    let below = character_degrees(&q.group, &DegreeOptions::with_strategy(strategy))?;
    let mut layer = BTreeMap::new();
    for (&d, &m) in &full.degrees {
        let rest = m.saturating_sub(below.multiplicity(d));
        if rest > 0 {
            layer.insert(d, rest);
        }
    }
    Ok(Some(layer))
}

/// Builds the entry, runs the extension pipeline and compares every
/// computed invariant against the entry's expectations.
pub fn evaluate(args: &EntryArgs, strategy: StrategyChoice, thorough: bool) -> CliResult<Evaluation> {
    let built = catalog::build(&args.request()?)?;
    let ex = &built.expected;
    let g = ConcreteGroup::from_arc(built.base.clone())?;
    let base = GroupSummary::of(&g);
    let opts = PipelineOptions {
        top_order: Some(built.top_order),
        degrees: DegreeMode::Skip,
        fingerprint: false,
        ..Default::default()
    };
    let outcome = run_pipeline(&g, &built.alpha, &opts)?;
    let rec = &outcome.record;
    let names = built.base.names();
    let alpha = AlphaSummary {
        images: built.alpha.display(),
        automorphism: rec.hom && rec.surj,
        order: rec.alpha_order,
        violations: outcome
            .violations
            .iter()
            .map(|v| {
                format!(
                    "{}: {} != {}",
                    v.relation.describe(names),
                    built.base.display(&v.lhs),
                    built.base.display(&v.rhs)
                )
            })
            .collect(),
    };

    let mut checks = Vec::new();
    expect(&mut checks, "base_order", &ex.base_order, Some(base.order));
    expect(&mut checks, "base_exponent", &ex.base_exponent, Some(base.exponent));
    expect(&mut checks, "base_derived_orders", &ex.base_derived_orders, Some(base.derived_orders.clone()));
    expect(&mut checks, "base_class", &ex.base_class, Some(base.class));
    expect(&mut checks, "alpha_valid", &ex.alpha_valid, Some(alpha.automorphism));
    expect(&mut checks, "alpha_order", &ex.alpha_order, rec.alpha_order);

    let mut extension = None;
    let mut ext_file = None;
    if let Some(ext) = &outcome.extension {
        let pg = &ext.group;
        let summary = GroupSummary::of(pg);
        let degrees = character_degrees(pg, &DegreeOptions::with_strategy(strategy))?;
        let layer = if ex.top_layer.is_some() || thorough {
            top_layer(pg, &degrees, StrategyChoice::Counting)?
        } else {
            None
        };
        ext_file = Some(PresentationFile::from_presentation(&ext.presentation));
        extension = Some(ExtensionSummary {
            group: summary,
            degrees: Some(degrees),
            top_layer: layer,
        });
    }
    let es = extension.as_ref();
    expect(&mut checks, "extension_order", &ex.extension_order, es.map(|e| e.group.order));
    expect(&mut checks, "extension_dl", &ex.extension_dl, es.map(|e| e.group.derived_length));
    expect(
        &mut checks,
        "extension_derived_orders",
        &ex.extension_derived_orders,
        es.map(|e| e.group.derived_orders.clone()),
    );
    expect(
        &mut checks,
        "extension_lcs_orders",
        &ex.extension_lcs_orders,
        es.map(|e| e.group.lcs_orders.clone()),
    );
    expect(
        &mut checks,
        "extension_cd",
        &ex.extension_cd,
        es.and_then(|e| e.degrees.as_ref()).map(|d| d.degree_set()),
    );
    expect(
        &mut checks,
        "top_layer",
        &ex.top_layer,
        es.and_then(|e| e.top_layer.as_ref()).and_then(|l| {
            let d = ex.top_layer.as_ref()?.value.0;
            Some((d, l.get(&d).copied().unwrap_or(0)))
        }),
    );

    if thorough {
        let rep = built.base.consistency_check()?;
        computed(&mut checks, "base_consistent", Value::Bool(true), Value::Bool(rep.passed));
        if let Some(ext) = &outcome.extension {
            let rep = ext.presentation.consistency_check()?;
            computed(&mut checks, "extension_consistent", Value::Bool(true), Value::Bool(rep.passed));
        }
        let must_be_valid = built.entry.templated || ex.alpha_valid.as_ref().is_some_and(|e| e.value);
        if must_be_valid {
            computed(&mut checks, "fully_valid", Value::Bool(true), Value::Bool(rec.fully_valid()));
        }
        if let Some(d) = es.and_then(|e| e.degrees.as_ref()) {
            computed(&mut checks, "degrees_exact", Value::Bool(true), Value::Bool(d.is_exact()));
            computed(
                &mut checks,
                "degree_square_sum",
                Value::from(es.map(|e| e.group.order).unwrap_or(0)),
                Value::from(d.square_sum()),
            );
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(Evaluation {
        entry: built.entry.name.to_string(),
        tag: tag(&built),
        prime: built.prime,
        n: built.n,
        variant: built.variant,
        tuple: built.tuple.clone(),
        top_order: built.top_order,
        base,
        alpha,
        record: outcome.record.clone(),
        extension,
        checks,
        passed,
        presentations: Some((PresentationFile::from_presentation(&built.base), ext_file)),
    })
}

pub fn finish_checks(ctx: &Ctx, ev: &Evaluation) -> CliResult<()> {
    let failed = ev.failed_checks();
    if failed.is_empty() {
        ctx.note(format!("{}: {} checks passed", ev.tag, ev.checks.len()));
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{}: failed checks: {}", ev.tag, join(failed))))
    }
}

pub fn run_build(ctx: &mut Ctx, args: &EntryArgs, strategy: StrategyChoice) -> CliResult<()> {
    let mut ev = evaluate(args, strategy, false)?;
    if let Some((base, ext)) = ev.presentations.take() {
        if ctx.out.is_some() {
            ctx.emit_text(&format!("{}.base", ev.tag), "json", &crate::output::pretty(&base)?)?;
            if let Some(ext) = ext {
                ctx.emit_text(&format!("{}.extension", ev.tag), "json", &crate::output::pretty(&ext)?)?;
            }
        }
    }
    if !ev.alpha.violations.is_empty() {
        ctx.note(format!("map is not a homomorphism: {}", join(&ev.alpha.violations)));
    }
    let stem = format!("{}.summary", ev.tag);
    ctx.emit(&stem, &ev, || ev.table())?;
    finish_checks(ctx, &ev)
}

pub fn run_verify(ctx: &mut Ctx, args: &EntryArgs, strategy: StrategyChoice) -> CliResult<()> {
    let ev = evaluate(args, strategy, true)?;
    let stem = format!("{}.verify", ev.tag);
    ctx.emit(&stem, &ev, || ev.table())?;
    finish_checks(ctx, &ev)
}
