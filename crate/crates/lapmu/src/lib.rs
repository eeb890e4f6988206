//! File formats, report rendering and the `lapmu` command line on top of
//! [`lapmu_core`].

pub mod cli;
pub mod csv;
pub mod format;
pub mod io;
pub mod report;

pub use lapmu_core as core;
