//! Verification harness and file formats for Kneser-type graphs.
//!
//! [`verify`] compares the closed forms in [`kneser_core::formulas`] with
//! breadth-first search, [`sweep`] runs it over parameter ranges, and [`io`]
//! reads and writes edge lists and DOT files.

pub mod io;
pub mod report;
pub mod sweep;
pub mod verify;

pub use report::{
    Check, CheckStatus, Mismatch, Outcome, ParamsRecord, Summary, VerificationReport,
};
pub use sweep::{sweep, GenRange, SweepOutput, SweepSpec};
pub use verify::Options;
