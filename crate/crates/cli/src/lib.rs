//! File formats and report serialization for the `uum` command-line tool.
//!
//! The algorithms live in `uum-core`; this crate adds the Burmeister `.cxt`
//! and CSV cross-table formats plus the JSON report shapes.

pub mod formats;
pub mod report;

pub use formats::{parse_csv, parse_cxt, serialize_csv, serialize_cxt, Format, FormatError};
