//! HTTP service and command line over a loaded store.

pub mod api;
pub mod cli;
pub mod params;

pub use api::{router, AppState};
