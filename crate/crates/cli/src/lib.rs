//! Command-line frontend for the `cutplan` planner: structure documents,
//! plan reports and the on-disk fraction-plan cache.

pub mod cache;
pub mod document;
pub mod error;
pub mod pipeline;
pub mod report;

pub use cache::{structure_hash, FractionCache, Lookup};
pub use document::StructureDocument;
pub use error::CliError;
pub use pipeline::{CacheStatus, Options, Outcome, Pipeline};
pub use report::PlanReport;
