//! Certified brackets for weighted covering and separation numbers.
//!
//! The crate computes discretized covering/separation linear programs over
//! delta-nets of convex bodies, converts fractional covers to integral covers
//! by randomized rounding, evaluates volume and Hadwiger-type bounds, and
//! handles the finite-metric-space analogues.

pub mod error;
pub mod geometry;
pub mod covering;
pub mod lp;
pub mod nets;
pub mod point;

pub use error::{Error, Result};
pub use geometry::{BodyDescriptor, ConvexBody, HalfSpace, Shape};
pub use point::Point;

/// Library version string (recorded in every output file).
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Identifier of the fixed RNG algorithm used throughout (recorded in
/// outputs for reproducibility).
pub const RNG_ALGORITHM: &str = "chacha12";
