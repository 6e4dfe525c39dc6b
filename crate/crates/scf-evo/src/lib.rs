//! Config files, CSV and SVG output, and the command implementations behind
//! the `scf-evo` binary.

#![forbid(unsafe_code)]

pub mod commands;
pub mod config;
pub mod csv;
pub mod svg;

pub use commands::{CommandError, SweepSelection};
pub use config::{parse_config, serialize_config, ConfigError, RunConfig};
pub use csv::{read_trajectory_csv, write_equilibria_report, write_trajectory_csv, CsvError};
pub use svg::{axis_ranges, render_svg_plot, PlotError, Series};
