//! Document model for the `beatty-dcs` command line tools.
//!
//! Everything the binary reads or writes is JSON with a fixed field
//! order (struct declaration order), LF line endings, and exact
//! integer offsets, so outputs are byte-stable across runs.

pub mod document;
