//! File formats, the model DSL, DOT export and the `apr` command line on
//! top of `apr-core`.

pub mod ars_format;
pub mod cli;
pub mod dot;
pub mod dsl;
pub mod report;
