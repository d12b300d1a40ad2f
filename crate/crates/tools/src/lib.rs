//! Text and JSON formats, presets, parallel exploration and the `cluster`
//! command line on top of `cluster-core`.

pub mod cli;
pub mod json;
pub mod parallel;
pub mod parse;
pub mod presets;

pub use cli::{run, Outcome};
