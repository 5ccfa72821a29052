//! Exact computation of categorified chromatic and dichromatic graph
//! invariants: cube-of-resolutions homology of quotient rings and Koszul
//! complexes over `ℚ[x_1, ..., x_n]`, together with the polynomial oracles
//! their Euler characteristics are checked against.

pub mod arith;
pub mod chromatic;
pub mod dichromatic;
pub mod error;
pub mod graph;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, LinearForm, State};
