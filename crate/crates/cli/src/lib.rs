//! Library surface of the command-line front end, shared with the
//! integration and acceptance tests.

pub mod commands;
pub mod report;
pub mod schema;
