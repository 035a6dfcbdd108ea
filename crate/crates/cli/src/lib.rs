//! Command-line front end: class tables, class products, `min(G)` and the
//! verification suite with a result cache.

pub mod cache;
pub mod commands;
pub mod manifest;
pub mod output;
