//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use pgroup_core::catalog::{self, BuildRequest};
use pgroup_core::extension::{run_pipeline, DegreeMode, Extension, PipelineOptions};
use pgroup_core::ConcreteGroup;

/// The entry's base group and its extension by the default map.
pub fn fixture(name: &str) -> (Arc<pgroup_core::PcPresentation>, ConcreteGroup, Extension) {
    let built = catalog::build(&BuildRequest::new(name)).expect("catalog entry builds");
    let g = ConcreteGroup::from_arc(built.base.clone()).expect("base enumerates");
    let opts = PipelineOptions {
        top_order: Some(built.top_order),
        degrees: DegreeMode::Skip,
        fingerprint: false,
        ..Default::default()
    };
    let ext = run_pipeline(&g, &built.alpha, &opts)
        .expect("pipeline runs")
        .extension
        .expect("default map extends");
    (built.base, g, ext)
}
