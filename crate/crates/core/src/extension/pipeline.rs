use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::map::{map_order, Relations, ORDER_CAP};
use super::{semidirect_cyclic, GeneratorMap, MapState, Violation};
use crate::degrees::{character_degrees_with, DegreeOptions, DegreeReport, StrategyChoice};
use crate::group::{ConcreteGroup, Fingerprint};
use crate::pc::PcPresentation;
use crate::Result;

/// Outcome of the validation steps for one candidate map. Each flag is only
/// set when all earlier ones hold; structural fields are filled only when
/// every flag holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<u32>>,
    pub hom: bool,
    pub surj: bool,
    /// `P'' > 1`
    pub dppos: bool,
    /// `o(alpha)` equals the order of the top group
    pub ordp: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dl: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcs: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cd: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Fingerprint>,
}

impl ExtensionRecord {
    fn rejected(tuple: Option<Vec<u32>>) -> Self {
        ExtensionRecord {
            tuple,
            hom: false,
            surj: false,
            dppos: false,
            ordp: false,
            alpha_order: None,
            order: None,
            dl: None,
            lcs: None,
            cd: None,
            fingerprint: None,
        }
    }

    pub fn fully_valid(&self) -> bool {
        self.hom && self.surj && self.dppos && self.ordp
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    Skip,
    Strategy(StrategyChoice),
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// `p` when unset
    pub top_order: Option<u64>,
    pub degrees: DegreeMode,
    pub fingerprint: bool,
    pub order_cap: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            top_order: None,
            degrees: DegreeMode::Strategy(StrategyChoice::Auto),
            fingerprint: true,
            order_cap: ORDER_CAP,
        }
    }
}

impl PipelineOptions {
    /// Counting-only degrees and no fingerprint, for bulk sweeps.
    pub fn sweep() -> Self {
        PipelineOptions {
            degrees: DegreeMode::Strategy(StrategyChoice::Counting),
            fingerprint: false,
            ..Default::default()
        }
    }
}

/// The extension `P = G ⋊ <alpha>`; `t` (index 0 of the presentation) is the
/// top generator.
#[derive(Clone, Debug)]
pub struct Extension {
    pub presentation: Arc<PcPresentation>,
    pub group: ConcreteGroup,
    pub top_order: u64,
    pub degrees: Option<DegreeReport>,
}

impl Extension {
    /// Index of the top generator `t`.
    pub fn top(&self) -> u32 {
        self.group.generators()[0]
    }

    /// Indices of the base generators inside `P`.
    pub fn base_generators(&self) -> &[u32] {
        let s = if self.top_order > self.group.prime() as u64 { 2 } else { 1 };
        &self.group.generators()[s..]
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub record: ExtensionRecord,
    /// collected relation failures; empty when `record.hom`
    pub violations: Vec<Violation>,
    pub map: GeneratorMap,
    pub extension: Option<Extension>,
}

/// Validation and analysis shared by single runs and sweeps.
pub(crate) struct Analyzer<'g> {
    pub g: &'g ConcreteGroup,
    base: Arc<PcPresentation>,
    rels: Relations,
    opts: PipelineOptions,
}

impl<'g> Analyzer<'g> {
    pub(crate) fn new(g: &'g ConcreteGroup, base: Arc<PcPresentation>, opts: PipelineOptions) -> Self {
        Analyzer {
            g,
            rels: Relations::of(&base),
            base,
            opts,
        }
    }

    pub(crate) fn analyze(&self, images: &[u32], tuple: Option<Vec<u32>>) -> Result<(ExtensionRecord, Option<Extension>)> {
        let g = self.g;
        let mut rec = ExtensionRecord::rejected(tuple);
        if !self.rels.hold(g, images) {
            return Ok((rec, None));
        }
        rec.hom = true;
        if g.subgroup_closure(images).order() != g.order() {
            return Ok((rec, None));
        }
        rec.surj = true;
        let o = map_order(g, images, self.opts.order_cap)?;
        rec.alpha_order = Some(o);
        let top = self.opts.top_order.unwrap_or(g.prime() as u64);
        if !top.is_multiple_of(o) {
            return Ok((rec, None));
        }
        let map = GeneratorMap::from_indexed(self.base.clone(), g, images).with_state(MapState::Automorphism);
        let pres = Arc::new(semidirect_cyclic(&map, top, o)?);
        let pg = ConcreteGroup::from_arc(pres.clone())?;
        let derived = pg.derived_series();
        rec.dppos = derived.len() >= 4;
        rec.ordp = rec.dppos && o == top;
        let mut ext = Extension {
            presentation: pres,
            group: pg,
            top_order: top,
            degrees: None,
        };
        if !rec.fully_valid() {
            return Ok((rec, Some(ext)));
        }
        let pg = &ext.group;
        rec.order = Some(pg.order() as u64);
        rec.dl = Some(derived.len() - 1);
        rec.lcs = Some(pg.lower_central_series().iter().map(|s| s.order() as u64).collect());
        let need_classes = matches!(self.opts.degrees, DegreeMode::Strategy(_)) || self.opts.fingerprint;
        if need_classes {
            let classes = pg.conjugacy_classes();
            if let DegreeMode::Strategy(s) = self.opts.degrees {
                let report = character_degrees_with(pg, &classes, &DegreeOptions::with_strategy(s))?;
                rec.cd = Some(report.degrees.clone());
                ext.degrees = Some(report);
            }
            if self.opts.fingerprint {
                rec.fingerprint = Some(pg.fingerprint_with(&classes, rec.cd.as_ref()));
            }
        }
        Ok((rec, Some(ext)))
    }
}

/// Validates `map` against the base group `g`, forms `P = G ⋊ <alpha>` and
/// analyzes it, stopping at the first failed step.
pub fn run_pipeline(g: &ConcreteGroup, map: &GeneratorMap, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let base = map.base().clone();
    let analyzer = Analyzer::new(g, base, opts.clone());
    let images = map.indexed(g);
    let (record, extension) = analyzer.analyze(&images, None)?;
    let checked = map.clone().with_state(match (record.hom, record.surj) {
        (true, true) => MapState::Automorphism,
        (true, false) => MapState::Homomorphism,
        _ => MapState::Unchecked,
    });
    let violations = if record.hom { Vec::new() } else { map.check_relations() };
    Ok(PipelineOutcome {
        record,
        violations,
        map: checked,
        extension,
    })
}
