//! BIT-predicate graphs, saturation witnesses, colouring-number
//! orderings, the downward orientation, and the edge-redirection
//! procedure.

mod bit;
mod colouring;
mod finite;
mod redirect;
mod scan;

pub use bit::{
    bit_digraph_on, bit_edge, bit_graph_on, bit_positions, check_saturation, from_bit_set,
    nz_closure, saturation_witness, saturation_witness_fast, verify_witness, witness_u64,
    BitVertex, SaturationOutcome,
};
pub use colouring::{colouring_number, colouring_number_brute, orient_down, ColOrdering};
pub use finite::{FiniteDigraph, FiniteGraph};
pub use redirect::{
    redirect, Cond3Reading, NoAdmissibleVertex, RedirectOutcome, ReversalEntry, ReversalLog,
};
pub use scan::{canonical_mask, catalog_up_to_iso, complement_scan, ScanRow};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("adjacency is not defined on loops")]
    LoopQuery,
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("malformed digraph: {0}")]
    MalformedDigraph(String),
    #[error("ordering does not cover the vertex set")]
    IncompleteOrdering,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("the sets must be disjoint, both contain {0}")]
    NotDisjoint(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("no admissible vertex at step {}", .0.step)]
    NoAdmissibleVertex(Box<NoAdmissibleVertex>),
    #[error("redirection invariant violated: {0}")]
    ClaimViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}
