//! Verified atlas of explicit quartic data, the reproduction pipeline and the
//! plotting backend behind the `quartica` command-line tool.

pub mod atlas;
pub mod report;
pub mod reproduce;
pub mod towers;
pub mod plot;
