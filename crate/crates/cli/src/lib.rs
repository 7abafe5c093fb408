//! Library surface of the `obsplit` command-line tool: expression parsing,
//! scenario deserialization, report construction, and identity suites.
//!
//! The binary in `main.rs` is a thin dispatcher over this crate; everything
//! here is usable (and tested) as a library.

pub mod bundle;
pub mod error;
pub mod parser;
pub mod render;
pub mod report;
pub mod scenario;
pub mod suites;

pub use error::{CliError, Result};
pub use parser::parse_expression;
pub use report::{build_report, ReportFile};
pub use scenario::{BuiltScenario, ScenarioFile};
pub use suites::{run_check, CheckReport};
