//! Experiment harness around `bdlab-core`.
//!
//! The binary in `main.rs` is a thin clap front end over [`commands`]; the
//! acceptance suite drives the same functions directly.

pub mod checkpoint;
pub mod commands;
pub mod config;
pub mod output;
pub mod zeros;

pub use config::ExperimentConfig;
