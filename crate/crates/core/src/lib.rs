//! Near-optimal straight-line drawings of dense graphs.

pub mod catalog;
pub mod crossings;
pub mod error;
pub mod estimate;
pub mod experiment;
pub mod geom;
pub mod graph;
pub mod pipeline;
pub mod regularity;
pub mod svg;

pub use error::{Error, Result};
