//! Brute-force reference implementations and fixture generators.

mod cycles;
mod generate;
mod search;

use thiserror::Error;

pub use cycles::{
    edge_subset_cycles, enumerate_simple_cycles, find_light_simple_cycle, find_simple_cycle,
    homology_reduced_cycle_search, light_simple_cycles, CycleWitness, DEFAULT_SUBSET_CAP,
};
pub use generate::{random_lof, random_log, random_reduced_injective_lot, GeneratedLot};
pub use search::{
    all_branchings, dense_subgraph_search, exhaustive_branching_search, exhaustive_lbf_search,
    DEFAULT_BRANCHING_CAP, DEFAULT_LBF_CAP, DEFAULT_SUBGRAPH_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size {size} exceeds the oracle cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("no admissible sample after {attempts} attempts")]
    GeneratorExhausted { attempts: usize },
}
