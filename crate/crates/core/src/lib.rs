pub mod bpbp;
pub mod chart;
pub mod data;
pub mod deformation;
pub mod error;
pub mod ext;
pub mod f2linalg;
pub mod presentations;
pub mod report;
pub mod steenrod;
pub mod svg;

pub use chart::{Chart, ChartEntry, Frontier, Grading};
pub use error::{Error, Result};
pub use report::CheckReport;
