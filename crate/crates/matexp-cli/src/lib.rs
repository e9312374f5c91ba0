//! Library surface behind the `matexp` binary: document parsing and
//! closed-form rendering. Kept as a library so the parsers can be fuzzed
//! and reused directly.

pub mod io;
pub mod render;
