//! Third-order CWENOZ finite-volume schemes for 1D and 2D hyperbolic
//! conservation laws on uniform Cartesian grids, with ghost-free boundary
//! reconstructions.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bc;
pub mod cases;
pub mod error;
pub mod grid;
pub mod models;
pub mod output;
pub mod par;
pub mod poly;
pub mod recon1d;
pub mod recon2d;
pub mod timeint;

pub use error::{Error, Result};
pub use grid::{Field, Grid1D, Grid2D};
pub use models::Model;
pub use par::ExecPolicy;
