//! Labeled oriented trees and forests, their link graphs, selection graphs
//! and branchings, and certificates for asphericity of the associated
//! presentation 2-complexes.

pub mod arborescence;
pub mod certify;
pub mod graph;
pub mod link_complex;
pub mod log_model;
pub mod oracle;
pub mod selection;

pub use graph::{Multigraph, Step, Walk};
pub use log_model::{Log, LogError};
