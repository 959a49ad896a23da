//! Command-line pipeline over `rpforge-core`: family generation and checks,
//! hull, pulling triangulation, antipodal quotient and homology, with
//! per-stage files and exit codes.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage, 3 I/O, and 10 to 15 for
//! a failure in the family, verify, hull, triangulate, quotient and homology
//! stages.

pub mod app;
pub mod bounds;
pub mod config;
pub mod error;
pub mod family_io;
pub mod pipeline;

pub use app::run;
pub use config::{FamilySpec, Format, PipelineConfig, Stage, HULL_LIMIT};
pub use error::CliError;
pub use pipeline::Summary;
