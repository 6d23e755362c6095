//! Run configuration and report envelope shared by the `maninlab` binary,
//! its tests and the fuzz targets.

pub mod config;
pub mod report;

pub use config::{parse_q_list, parse_selector, ConfigError, RunConfig, Selector, DEFAULT_SEED};
pub use report::{descriptor_hash, envelope, has_float, SCHEMA};
