//! Candidate automorphisms, cyclic extensions `G ⋊ <alpha>`, and sweeps
//! over parameterized families of maps.
//!
//! The validation steps for a map, in order: relations preserved (`hom`),
//! images generate (`surj`), the extension has `P'' > 1` (`dppos`), and the
//! map has the order of the top group (`ordp`).

mod map;
mod pipeline;
mod semidirect;
mod sweep;
mod template;

pub use map::{GeneratorMap, MapState, Relation, Violation, ORDER_CAP};
pub use pipeline::{run_pipeline, DegreeMode, Extension, ExtensionRecord, PipelineOptions, PipelineOutcome};
pub use semidirect::semidirect_cyclic;
pub use sweep::{sweep, tuple_at, tuple_index, SweepOptions, SweepSink, SweepSummary};
pub use template::{MapTemplate, TemplateImage};

pub(crate) use map::{compose_indexed, map_order};
