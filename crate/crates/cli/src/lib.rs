//! Library side of the `gpi` command: document format, report store and
//! the commands themselves.

pub mod commands;
pub mod document;
pub mod store;
