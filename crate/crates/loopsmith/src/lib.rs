//! loopsmith: a finite loop theory engine.
//!
//! A loop is a set with a binary operation whose Cayley table is a Latin
//! square and which has a two-sided identity. This crate builds and analyses
//! finite loops: translation and inner mappings, nuclei and center, central
//! series, automorphic-loop checks, a matrix-plane construction of order-p^3
//! loops over GF(p), Bruck associates of commutative loops of odd order,
//! isomorphism testing and classification, and a constrained finite-model
//! search.

pub mod bruck;
pub mod gf;
pub mod inner;
pub mod iso;
pub mod loops;
pub mod perm;
pub mod qa;
pub mod report;
pub mod search;
pub mod structure;
