//! Scenario files, BER sweeps, envelope histograms and CSV/gnuplot output.

mod config;
mod csv;
mod pdf;
mod sweep;

pub use config::{load_config, parse_config, ConfigError, CONFIG_KEYS};
pub use csv::{emit_curve_csv, parse_curve_csv, render_curve_csv, write_gnuplot_script, CSV_HEADER};
pub use pdf::{run_pdf_experiment, PdfTable, PDF_BINS, PDF_RANGE, PDF_STEPS};
pub use sweep::{analyze_curve, db_grid, run_ber_sweep, run_ber_sweep_with, BerCurve, BerPoint, SweepOptions};

pub use crate::scenario::{ChannelGenerator, ScenarioConfig};
