//! Command-line front end: presentation parsing, configuration, command
//! dispatch and reports.

mod config;
mod presentation;
mod reports;
mod run;

pub use config::{Cli, CliConfig, Command, ConfigError, Input};
pub use presentation::{parse_presentation, parse_raw_presentation, PresentationError, RawPresentation};
pub use reports::{
    certificate_text, CurvatureEntry, CycleEntry, GaussBonnetReport, LinkEdgeEntry, LinkReport, MetricSummary,
    PieceEntry, PiecesReport, ReduceReport, ValidateReport, VertexLinkReport,
};
pub use run::{run, to_json, Outcome, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN};
