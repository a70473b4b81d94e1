use clap::Args;
use pgroup_core::catalog::{self, BuildRequest};
use pgroup_core::extension::{run_pipeline, DegreeMode, PipelineOptions};
use pgroup_core::theorems::{lemma32_campaign, lemma41_suite, theorem33_campaign};
use pgroup_core::ConcreteGroup;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::evaluate::tag;
use crate::output::{Ctx, Table};

#[derive(Args, Clone, Debug)]
pub struct CheckArgs {
    /// power identity (32) or automorphism-power expansion (41)
    #[arg(long, conflicts_with = "theorem")]
    pub lemma: Option<u32>,
    /// order bound on center-fixing automorphisms (33)
    #[arg(long)]
    pub theorem: Option<u32>,
    /// catalog entry supplying the group for lemma checks
    #[arg(long, default_value = "ex52")]
    pub example: String,
    #[arg(long)]
    pub prime: Option<u32>,
    /// extraspecial rank for the theorem check
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub tuple: Option<Vec<u32>>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
}

#[derive(Serialize)]
struct Doc<'a, T: Serialize> {
    check: String,
    group: &'a str,
    holds: bool,
    report: &'a T,
}

fn request(args: &CheckArgs) -> CliResult<BuildRequest> {
    let mut req = BuildRequest::new(&args.example);
    req.prime = args.prime;
    req.tuple = args.tuple.clone();
    if let Some(v) = &args.variant {
        req.variant = Some(v.parse()?);
    }
    Ok(req)
}

fn verdict(ctx: &Ctx, name: &str, holds: bool) -> CliResult<()> {
    if holds {
        ctx.note(format!("{name}: holds"));
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{name}: fails")))
    }
}

pub fn run_check(ctx: &mut Ctx, args: &CheckArgs) -> CliResult<()> {
    match (args.lemma, args.theorem) {
        (Some(32), None) => lemma32(ctx, args),
        (Some(41), None) => lemma41(ctx, args),
        (None, Some(33)) => theorem33(ctx, args),
        (None, None) => Err(CliError::Usage("pass --lemma 32|41 or --theorem 33".into())),
        _ => Err(CliError::Usage("known checks: --lemma 32, --lemma 41, --theorem 33".into())),
    }
}

fn lemma32(ctx: &mut Ctx, args: &CheckArgs) -> CliResult<()> {
    let built = catalog::build(&request(args)?)?;
    let g = ConcreteGroup::from_arc(built.base.clone())?;
    let rep = lemma32_campaign(&g, args.trials, ctx.seed)?;
    let group = format!("{} base", tag(&built));
    let doc = Doc {
        check: "lemma32".into(),
        group: &group,
        holds: rep.holds(),
        report: &rep,
    };
    ctx.note(format!(
        "{group}: literal violations {}/{}, corrected violations {}, with h in G' {}",
        rep.literal_violations, rep.trials, rep.corrected_violations, rep.corrected_violations_h_in_derived
    ));
    ctx.emit(&format!("{}.lemma32", tag(&built)), &doc, || {
        let mut t = Table::new([
            "order",
            "trials",
            "seed",
            "literal_violations",
            "literal_violations_small_n",
            "corrected_violations",
            "corrected_violations_h_in_derived",
        ]);
        t.push(vec![
            rep.order.to_string(),
            rep.trials.to_string(),
            rep.seed.to_string(),
            rep.literal_violations.to_string(),
            rep.literal_violations_small_n.to_string(),
            rep.corrected_violations.to_string(),
            rep.corrected_violations_h_in_derived.to_string(),
        ]);
        t
    })?;
    verdict(ctx, "lemma32", rep.holds())
}

fn lemma41(ctx: &mut Ctx, args: &CheckArgs) -> CliResult<()> {
    let built = catalog::build(&request(args)?)?;
    let g = ConcreteGroup::from_arc(built.base.clone())?;
    let opts = PipelineOptions {
        top_order: Some(built.top_order),
        degrees: DegreeMode::Skip,
        fingerprint: false,
        ..Default::default()
    };
    let outcome = run_pipeline(&g, &built.alpha, &opts)?;
    let Some(ext) = outcome.extension.as_ref() else {
        return Err(CliError::Usage(format!("{}: the map does not define an extension", tag(&built))));
    };
    let rep = lemma41_suite(ext)?;
    let group = format!("{} extension", tag(&built));
    let doc = Doc {
        check: "lemma41".into(),
        group: &group,
        holds: rep.holds(),
        report: &rep,
    };
    ctx.emit(&format!("{}.lemma41", tag(&built)), &doc, || {
        let mut t = Table::new(["class", "checked", "failures", "swapped_failures", "alpha_order", "corollary_holds"]);
        t.push(vec![
            rep.class.to_string(),
            rep.checked.to_string(),
            rep.failures.len().to_string(),
            rep.swapped_failures.len().to_string(),
            rep.corollary.alpha_order.to_string(),
            rep.corollary.holds.to_string(),
        ]);
        t
    })?;
    verdict(ctx, "lemma41", rep.holds())
}

fn theorem33(ctx: &mut Ctx, args: &CheckArgs) -> CliResult<()> {
    let p = args.prime.unwrap_or(5);
    let rep = theorem33_campaign(p, args.n, args.trials, ctx.seed)?;
    let group = format!("extraspecial p{p} n{}", args.n);
    ctx.note(format!("{group}: p-part distribution {:?}", rep.distribution));
    let doc = Doc {
        check: "theorem33".into(),
        group: &group,
        holds: rep.holds(),
        report: &rep,
    };
    ctx.emit(&format!("extraspecial-p{p}-n{}.theorem33", args.n), &doc, || {
        let mut t = Table::new(["seed", "word_length", "matrix_order", "order", "p_part"]);
        for s in rep.samples.iter().chain(rep.witness.iter()) {
            t.push(vec![
                s.seed.to_string(),
                s.word_length.to_string(),
                s.matrix_order.to_string(),
                s.order.to_string(),
                s.p_part.to_string(),
            ]);
        }
        t
    })?;
    verdict(ctx, "theorem33", rep.holds())
}
