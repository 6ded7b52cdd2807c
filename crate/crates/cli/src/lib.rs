//! File formats, reports and the regression table behind the `vhess` binary.

pub mod format;
pub mod report;
pub mod verify;
