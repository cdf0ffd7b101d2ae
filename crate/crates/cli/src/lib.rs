//! Command-line layer over `uavsec-core`: configuration files, parameter
//! sweeps written as CSV, and the validation report.

pub mod config;
pub mod eval;
pub mod sweep;
pub mod validate;

pub use config::{parse_config, parse_config_str, ConfigError, Link, Params};
pub use eval::{evaluate, EvalError};
pub use sweep::{run_sweep, write_csv, write_gnuplot, Series, SweepRow, SweepSpec, Tie};
pub use validate::{run_validate, Report, Suite};
