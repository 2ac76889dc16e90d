//! Algebraic linear-order kernel.
//!
//! Orders are built from finite chains by reversal, sum, lexicographic
//! product, and lexicographic powers with finite support. The ternary
//! finite-support order (maps ℕ → {-1,0,+1}, almost everywhere 0) is
//! the dense workhorse: it has no endpoints and realizes every finite
//! cut, so it stands in for the saturated orders that exist only at
//! uncountable cardinalities. Supports are finite and exponents stay
//! below ω^ω, which keeps comparison and canonical form decidable.

mod cut;
mod desc;
mod embed;
mod ordinal;
mod parse;

pub use cut::{patches_check, realize_cut, ternary_neighbours, Cut, PatchOutcome};
pub use desc::{
    cmp, enumerate, enumerate_up_to, sample_term, validate_term, OrderDesc, OrderTerm, Side,
    Sign, ENUM_CAP,
};
pub use embed::{
    embed_search, finite_power, glb_product, grow_binary, ldim, lub_product,
    merge_union_embedding, EmbedOutcome, OrderEmbedding,
};
pub use ordinal::OrdinalCnf;
pub use parse::{parse_desc, parse_term, print_desc, print_term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cut is malformed: lower side must lie strictly below the upper side")]
    MalformedCut,
    #[error("no element lies strictly between the cut sides")]
    EmptyOrderBetween,
    #[error("operation needs a dense order: {0}")]
    UnsupportedDescriptor(String),
    #[error("the set must be a subset of the ambient set")]
    NotSubset,
    #[error("least upper bound of the empty set does not exist")]
    EmptySet,
    #[error("enumeration bound too small to decide embeddability")]
    BoundTooSmall,
    #[error("dimension base must have at least two elements")]
    BaseTooSmall,
    #[error("order too large to enumerate")]
    TooLargeToEnumerate,
    #[error("no separating point available in the codomain power")]
    NoSeparatingPoint,
    #[error("interval is malformed: left endpoint must lie strictly below the right")]
    MalformedInterval,
    #[error("map is not an order embedding: {0}")]
    NotAnEmbedding(String),
    #[error("parse error: {0}")]
    Parse(String),
}
