//! JSON formats, the family resource, verification suites and the command
//! line front end for `qlrec`.

pub mod cli;
pub mod json;
pub mod numeric;
pub mod resource;
pub mod suites;
