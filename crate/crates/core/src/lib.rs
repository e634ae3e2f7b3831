//! Discrete elastic curves and networks: energy of the form
//! `E + alpha * L` (bending plus length), reference shapes, a-priori bounds,
//! stationarity diagnostics and a constrained minimizer.

// Range checks are written as `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod injectivity;
pub mod io;
pub mod network;
pub mod optimize;
pub mod recovery;
pub mod samples;
pub mod stationarity;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{DiscreteCurve, Point2};
pub use network::{Junction, Network, NetworkKind};
