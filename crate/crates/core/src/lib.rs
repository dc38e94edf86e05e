//! Parsing, grounding and evaluation of higher-order logic programs with
//! negation under the infinite-valued semantics, with extensionality,
//! stratification and stable-model analyses.

pub mod frontend;
pub mod truth;

pub use truth::{OrdinalIndex, TruthValue};
pub mod analysis;
pub mod classical;
pub mod cli;
pub mod engine;
pub mod exec;
pub mod herbrand;

#[cfg(test)]
mod golden;
#[cfg(test)]
pub(crate) mod testgen;
