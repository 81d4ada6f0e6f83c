//! Library half of the `singdet` command: input loading, reports and the
//! verification suites, shared with the integration tests.

pub mod app;
pub mod input;
pub mod report;
pub mod verify;
