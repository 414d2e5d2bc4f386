//! Catalog files, report tables and reproduction runs behind the `sdkit`
//! command-line tool.

pub mod catalog;
pub mod report;
pub mod reproduce;
