//! Library half of the `lck` command-line tool: the document format and the
//! command implementations.

pub mod commands;
pub mod document;
