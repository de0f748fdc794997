//! Command-line front end: expression parsing, rule files and the check
//! registry.

pub mod parser;
pub mod rules;
pub mod checks;
pub mod report;
