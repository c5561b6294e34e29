//! Non-crossing partitions: canonical representation, the lattice `NC(n)`
//! with its cached tables, and chains.

mod chain;
mod lattice;
mod partition;

pub use chain::{chains_between, Chain};
pub use lattice::{cap, enumerate_nc, lattice, set_cap, NcLattice, UpEdge, HARD_MAX};
pub use partition::{Partition, MAX_N};

pub(crate) use chain::{chain_indices, efficient_to_top};
pub(crate) use lattice::lattice_uncapped;
