//! Combinatorial path-following on symmetric triangulations of the n-sphere.
//!
//! The crate builds abstract symmetric triangulations of `S^n` that are
//! aligned with a flag of hemispheres `H_0 ⊂ … ⊂ H_n`, classifies simplices
//! of an anti-symmetric vertex labeling (alternating, almost-alternating,
//! complementary edges), and walks the implicit path graph whose degree-1
//! endpoints are either the poles `±H_0`, alternating top-dimensional
//! simplices (Fan mode), or almost-alternating simplices containing a
//! complementary edge (Tucker mode).
//!
//! A brute-force oracle materializes the whole graph and re-derives every
//! degree, parity, and pairing claim independently of the walk, and a small
//! Borsuk-Ulam driver turns the Tucker walk into an approximate-zero finder
//! for odd maps sampled on the sphere.

#![forbid(unsafe_code)]

pub mod borsuk;
pub mod cli;
pub mod complex;
pub mod flag;
pub mod generators;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod pathfinder;

pub use complex::{Simplex, SymmetricComplex, VertexId};
pub use flag::{Carrier, FlagIndex, HemisphereFlag};
pub use labeling::{classify, Labeling, Sign, SimplexClass, SimplexKind};
pub use pathfinder::{Mode, Node, NodeType, PathTrace, Termination, Walker};
