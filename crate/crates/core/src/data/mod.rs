//! Instance input and output.

pub mod mallows;
pub mod preflib;
pub mod report;

pub use mallows::{mallows_instance, mallows_sample, MallowsParams, MallowsSampler};
pub use preflib::{load_preflib, parse_preflib, serialize_instance, ParsedProfile, PreflibDocument, PreflibKind};
pub use report::{serialize_report, ReportJson, SummaryRow};
