//! Connectivity-aware synthesis of mixed ZX-phase polynomials.
//!
//! A [`MixedPhasePolynomial`] is a list of Z and X phase gadgets followed by
//! a CNOT section. The [`synthesis`] routines turn one into a circuit whose
//! CNOTs all lie on the edges of a device [`Topology`], starting from a
//! chosen qubit placement and reporting the placement they leave behind.
//! The [`meta`] searches improve the placement, and [`verify`] checks any
//! result against a dense unitary.

pub mod error;
pub mod gf2;
pub mod ir;
pub mod topology;
pub mod synthesis;
pub mod verify;
pub mod harness;
pub mod meta;
pub mod qasm;

pub use error::{Error, Result};
pub use gf2::{BitVec, ParityMatrix};
pub use ir::{Basis, Gate, MixedPhasePolynomial, PhaseGadget};
pub use meta::{run_pipeline, PipelineSpec};
pub use synthesis::{synthesize, Method, QubitMapping, SynthResult};
pub use topology::Topology;
