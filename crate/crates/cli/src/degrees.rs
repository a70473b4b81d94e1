use std::path::PathBuf;

use clap::Args;
use pgroup_core::catalog;
use pgroup_core::degrees::{character_degrees_with, DegreeOptions, DegreeReport, EigenOptions, StrategyChoice};
use pgroup_core::extension::{run_pipeline, DegreeMode, PipelineOptions};
use pgroup_core::{ConcreteGroup, PcPresentation};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::evaluate::{tag, EntryArgs};
use crate::output::{Ctx, Table};

#[derive(Args, Clone, Debug)]
pub struct DegreesArgs {
    /// catalog entry; omit when reading a presentation file
    #[arg(required_unless_present = "presentation")]
    pub name: Option<String>,
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub tuple: Option<Vec<u32>>,
    /// the base group instead of the extension
    #[arg(long)]
    pub base: bool,
    /// presentation file in the JSON format written by `build`
    #[arg(long, conflicts_with = "name")]
    pub presentation: Option<PathBuf>,
    /// auto, counting, diophantine, layered or eigenvector
    #[arg(long, default_value = "auto")]
    pub strategy: String,
}

#[derive(Serialize)]
struct Doc {
    source: String,
    order: u64,
    class_count: usize,
    report: DegreeReport,
}

pub fn run_degrees(ctx: &mut Ctx, args: &DegreesArgs) -> CliResult<()> {
    let strategy: StrategyChoice = args.strategy.parse()?;
    let (source, group) = match (&args.presentation, &args.name) {
        (Some(path), _) => {
            ctx.record_input(path)?;
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let pres = PcPresentation::from_json(&text)?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "presentation".into());
            (stem, ConcreteGroup::from_presentation(&pres)?)
        }
        (None, Some(name)) => {
            let entry = EntryArgs {
                name: name.clone(),
                prime: args.prime,
                n: args.n,
                variant: args.variant.clone(),
                tuple: args.tuple.clone(),
            };
            let built = catalog::build(&entry.request()?)?;
            let g = ConcreteGroup::from_arc(built.base.clone())?;
            if args.base {
                (format!("{}.base", tag(&built)), g)
            } else {
                let opts = PipelineOptions {
                    top_order: Some(built.top_order),
                    degrees: DegreeMode::Skip,
                    fingerprint: false,
                    ..Default::default()
                };
                let outcome = run_pipeline(&g, &built.alpha, &opts)?;
                let Some(ext) = outcome.extension else {
                    return Err(CliError::Usage(format!(
                        "{}: the map does not define an extension; use --base",
                        tag(&built)
                    )));
                };
                (format!("{}.extension", tag(&built)), ext.group)
            }
        }
        (None, None) => return Err(CliError::Usage("pass an entry name or --presentation".into())),
    };
    let opts = DegreeOptions {
        strategy,
        eigen: EigenOptions {
            seed: ctx.seed,
            ..Default::default()
        },
    };
    let classes = group.conjugacy_classes();
    let report = character_degrees_with(&group, &classes, &opts)?;
    ctx.note(format!("{source}: {:?} ({:?})", report.degrees, report.status));
    let doc = Doc {
        source: source.clone(),
        order: group.order() as u64,
        class_count: classes.len(),
        report,
    };
    ctx.emit(&format!("{source}.degrees"), &doc, || {
        let mut t = Table::new(["degree", "multiplicity"]);
        for (d, m) in &doc.report.degrees {
            t.push(vec![d.to_string(), m.to_string()]);
        }
        t
    })
}
