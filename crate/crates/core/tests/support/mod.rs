//! Shared helpers for the integration suites: independent oracles, random
//! generators and fixture loaders. Not every suite uses every helper.
#![allow(dead_code)]

pub mod fixtures;
pub mod path_oracle;
pub mod planted;
pub mod sparql_oracle;
