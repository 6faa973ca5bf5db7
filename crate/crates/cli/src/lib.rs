//! Command-line front end for `rupert-core`: OFF input, certificate and
//! survey output, and SVG figures of shadows, sections and allowable axes.

pub mod check;
pub mod commands;
pub mod off;
pub mod report;
pub mod svg;

pub use commands::{CliError, Exit, Theorem};
pub use report::{RunReport, SurveyOptions, SurveyReport};
