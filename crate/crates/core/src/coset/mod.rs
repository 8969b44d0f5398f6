//! Coset enumeration and low-index subgroup search for two-generator
//! presentations.

mod low_index;
mod table;
mod todd_coxeter;

use thiserror::Error;

pub use low_index::{
    low_index_subgroups, low_index_subgroups_with, LowIndexOptions, DEFAULT_NODE_BUDGET,
};
pub use table::{table_to_permutations, CosetTable};
pub use todd_coxeter::{todd_coxeter, DEFAULT_MAX_COSETS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("coset enumeration exceeded {max_cosets} cosets")]
    EnumerationOverflow { max_cosets: usize },
    #[error("low-index search exceeded {nodes} nodes")]
    SearchBudgetExceeded { nodes: u64 },
    #[error("budget must be positive")]
    InvalidBudget,
}
