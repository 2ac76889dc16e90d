//! The countable atomless Boolean algebra in canonical form, strong
//! separation interpolation, one-generator embedding extension, and
//! the successive-extension chain procedure.
//!
//! Transfinite push-out separable extensions collapse at this scale to
//! the principal-ideal computation of `ideal_below` plus the finite
//! chain embeddings of `refine_chain_embedding`; nothing further of
//! that theory is computed here.

mod elem;
mod embed;
mod finite;

pub use elem::BaElem;
pub use embed::{
    embed_into_atomless, extend_one, find_extension_value, ideal_below, interpolate,
    refine_chain_embedding, BaEmbedding, BoolAlg, CutBounds, Extension, FreeBa, IdealReport,
    PartitionEmbedding,
};
pub use finite::FiniteBa;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaError {
    #[error("separation precondition fails: {lower} is not strictly below {upper}")]
    SeparationFailure { lower: String, upper: String },
    #[error("extension rejected: bounds {lower_witness} ≤ x ≤ {upper_witness} are not respected")]
    Rejected {
        lower_witness: String,
        upper_witness: String,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("not a refinement: {0}")]
    NotARefinement(String),
    #[error("parse error: {0}")]
    Parse(String),
}
