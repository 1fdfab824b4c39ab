//! Std companion to `alcove-core`: the polytope file format, scan
//! reports and their deterministic parallel driver, the subcommand
//! bodies behind the `alcove` binary, and the ten-criterion
//! verification suite.

pub mod commands;
pub mod format;
pub mod pipeline;
pub mod report;
pub mod verify;
