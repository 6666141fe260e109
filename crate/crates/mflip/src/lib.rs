//! File formats, invariant checks and the command-line front end for
//! [`mflip_core`].

pub mod angle;
pub mod check;
pub mod cli;
pub mod csv;
pub mod report;
pub mod statefile;
