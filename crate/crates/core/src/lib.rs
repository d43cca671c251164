//! Two-sided group digraphs `2S(G; L, R)` over finite groups.
//!
//! The vertex set is a finite group `G`; there is an arc `g → l⁻¹ g r` for
//! every `l ∈ L` and `r ∈ R`. This crate builds these digraphs from
//! explicit multiplication tables, computes their components, and checks
//! the connectivity and component-counting theorems for them against
//! brute-force graph search.
//!
//! Modules:
//! - [`group`]: finite groups as tables, subgroups, double cosets, parsing.
//! - [`digraph`]: two-sided, generalized and Cayley digraphs; valencies; DOT.
//! - [`connectivity`]: strong and weak components, component isomorphism.
//! - [`theory`]: executable predicates, each paired with a graph oracle.
//! - [`fixtures`]: the worked examples as replayable checks.

pub mod connectivity;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod theory;

pub use error::{Error, Result};
pub use group::{ElementSubset, FiniteGroup};
