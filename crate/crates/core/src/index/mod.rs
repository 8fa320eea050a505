//! iSAX index construction and query answering.

mod query;
mod tree;

pub use query::{
    approx_query, exact_query_bruteforce, exact_query_pruned, ideal_tightness_curve,
    leaf_compactness, tightness, BsfPoint, ExactAnswer, QueryReport,
};
pub use tree::{IsaxTree, Node, NodeId, NodeKind, TreeStats};

/// Default leaf capacity for desk-scale datasets.
pub const DEFAULT_LEAF_SIZE: usize = 100;
