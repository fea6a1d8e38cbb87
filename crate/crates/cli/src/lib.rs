//! Spec-driven batch front end: parse a filtration spec document, run the
//! selected analyses and render the results.

pub mod emit;
pub mod error;
pub mod pipeline;
pub mod spec;

pub use emit::{emit, read_structured, Format};
pub use error::{Error, ParseError, Result};
pub use pipeline::{run, ResultBundle};
pub use spec::{parse_spec, Command, Settings, SpecDocument};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MGFILT_THREADS";
