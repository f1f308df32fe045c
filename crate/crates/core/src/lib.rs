//! Size multipartite Ramsey numbers `m_j(G_1, ..., G_r)`: the least `t` such
//! that every `r`-colouring of the edges of `K_{j×t}` has a copy of `G_i` in
//! colour `i` for some `i`.
//!
//! This crate is `no_std` (it needs `alloc`). File formats, the SAT solver
//! subprocess, threading and the command line live in the `mramsey` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cegar;
pub mod certificate;
pub mod cnf;
pub mod detect;
pub mod edgeset;
pub mod formulas;
pub mod pattern;
pub mod problem;
pub mod search;
pub mod shape;
pub mod value;
pub mod witness;

pub use certificate::{Certificate, ClassCheck, Verification};
pub use edgeset::EdgeSet;
pub use formulas::{Family, DomainError};
pub use pattern::{format_targets, parse_targets, PatternError, TargetPattern};
pub use problem::{ColoringProblem, EdgeColoring, ProblemError};
pub use search::{SearchConfig, SearchOutcome, SearchReport};
pub use shape::{build_shape, complement_within, EdgeId, PartitionShape, ShapeError};
pub use value::RamseyValue;
pub use witness::{WitnessError, WitnessKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}
