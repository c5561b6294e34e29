//! Exact computations with semi-multiplicative functions on non-crossing
//! partitions: the convolution group, its action on moment sequences and
//! cumulant transforms, and the Hopf algebra whose characters it is.

pub mod cumulants;
pub mod error;
pub mod hopf;
pub mod incidence;
pub mod nc;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use nc::Partition;
pub use ring::{Dual, MPoly, Rational, Scalar};
