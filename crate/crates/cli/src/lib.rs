//! File-level tooling for OLSC McEliece: key files, multi-block message
//! framing, and the benchmark harness behind the `olsc` binary.

pub mod bench;
pub mod commands;
mod error;
pub mod framing;

pub use error::CliError;
