//! Balanced non-Hamiltonian directed path decompositions of the complete
//! digraph, and the chain rule task sets they induce.
//!
//! The crate is organised bottom-up:
//!
//! - [`digraph`]: vertices, arcs, directed paths and (claimed) decompositions
//!   of the complete digraph on `n` vertices, with canonical JSON and DOT output.
//! - [`spectrum`]: length profiles, the counting identities every balanced
//!   decomposition must satisfy, and exhaustive profile enumeration.
//! - [`constructions`]: the stored witness tables for `n = 5` and `n = 6`
//!   plus the all-arcs decomposition for any `n`.
//! - [`verifier`]: an independent checker that reports every defect of a
//!   claimed decomposition.
//! - [`oracle`]: exact backtracking search for decompositions with a
//!   prescribed profile.
//! - [`taskgen`]: vertex labelings, elementary function trees and rendered
//!   chain rule task sets.

#![deny(unsafe_code)]

pub mod constructions;
pub mod digraph;
mod error;
pub mod oracle;
pub mod spectrum;
pub mod taskgen;
pub mod verifier;

pub use error::{Error, Result};
