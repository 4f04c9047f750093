//! Config ingestion, expression parsing and command dispatch for the
//! `cofree` binary.

pub mod commands;
pub mod config;
pub mod expr;
