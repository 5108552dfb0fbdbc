//! Mapping searches layered on top of the synthesis routines.

mod anneal;
mod pipeline;
mod traversal;

pub use anneal::{accept_probability, anneal, AnnealConfig};
pub use pipeline::{run_pipeline, PipelineKind, PipelineSpec};
pub use traversal::{reverse_traversal, reverse_traversal_with};
