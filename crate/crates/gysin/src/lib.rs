//! Front end for the Floer Gysin engine: problem files, presets, golden
//! tables, verification suites and output formats.

pub use gysin_core as core;

pub mod checks;
pub mod commands;
pub mod golden;
pub mod output;
pub mod problem_file;
pub mod registry;
pub mod verify;
