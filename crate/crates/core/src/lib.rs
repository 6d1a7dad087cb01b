//! Exact construction and analysis of Tverberg partition graphs.

pub mod census;
pub mod combinatorics;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod lp;
pub mod partition;
pub mod paths;
pub mod sarkaria;
pub mod scalar;
pub mod tverberg;

pub use error::{Error, Result};
pub use geometry::PointConfig;
pub use partition::Partition;
pub use scalar::{Cyclotomic, Rational, Scalar, ScalarKind};
