//! Generators, file formats and bulk checks built on the core modules.

pub mod checks;
pub mod format;
pub mod generate;
