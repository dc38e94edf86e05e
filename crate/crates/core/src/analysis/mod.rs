//! Extensionality and stratification analyses.

mod ext;
mod graph;
mod strat;

pub use ext::{
    check_extensional, ext_relation, ExtContext, ExtRelation, ExtReport, ExtViolation, VacuousPair, ViolationKind,
};
pub use graph::DepGraph;
pub use strat::{
    check_locally_stratified_bounded, check_stratified, type_geq, LocalStratReport, StrataAssignment, Stratification,
};
