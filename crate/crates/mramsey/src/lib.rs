//! File formats, the SAT solver bridge, wall-clock budgets and the table
//! driver on top of `mramsey-core`.

pub mod bridge;
pub mod certfile;
pub mod run;
pub mod table;

pub use mramsey_core as core;
