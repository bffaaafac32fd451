//! Library half of the `omegatrace` command: ring files and subcommands.

pub mod commands;
pub mod ringfile;
