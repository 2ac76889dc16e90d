//! Desk-scale models of saturated structures: lexicographic linear
//! orders with cut realization, the BIT-predicate graph and its
//! downward orientations, hereditarily finite sets with Ackermann
//! coding, a generic back-and-forth engine, and the countable atomless
//! Boolean algebra with separation-based embedding extension.
//!
//! Everything here is finitary: the library computes with finite
//! supports, finite graphs, and finite Boolean subalgebras, and each
//! construction is checked against a brute-force oracle in the test
//! suites.

pub mod ba;
pub mod backforth;
pub mod graphs;
pub mod hf;
pub mod orders;
