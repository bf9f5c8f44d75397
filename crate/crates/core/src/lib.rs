//! Exact counting of nowhere-zero flows on graphs and signed graphs.
//!
//! Integral `k`-flow counts are fitted as rational quasipolynomials, modular
//! flow counts are computed over arbitrary finite abelian groups, and the
//! [`theorems`] module checks the reciprocity, Tutte and Möbius identities
//! tying them together against brute-force enumeration.

pub mod budget;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod flows;
pub mod matroid;
pub mod quasipoly;
pub mod signed_graph;
pub mod theorems;

pub use budget::Budget;
pub use error::{Error, Result};
pub use signed_graph::{Edge, EdgeSet, IncidenceMatrix, Orientation, Sign, SignedGraph};
