//! Scenario layer: run configuration, the five CLI commands, and their CSV
//! emission. Command logic lives in library functions (`run_*`) so it can be
//! driven both from `main` and from tests.

pub mod commands;
pub mod config;
mod error;

pub use commands::{
    alpha_steady_record, cmd_evolve, cmd_scan_alpha, cmd_scan_beta, cmd_steady, cmd_table1,
    evolve_csv, run_evolve, run_scan_alpha, run_scan_beta, run_steady, run_table1, scan_csv,
    steady_text, table1_csv, table1_text, ScanFamily, ScanMaximum, ScanNoise, ScanResult,
    Table1Entry, CSV_HEADER, MEASURE_COLUMNS,
};
pub use config::{parse_config, parse_config_str, InitialState, RunConfig};
pub use error::CliError;
