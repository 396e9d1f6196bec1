//! n-simplicial Burnside rings of small finite groups.
//!
//! The basis of `B_n(G)` is indexed by conjugacy classes of chains
//! `S_0 ≤ S_1 ≤ … ≤ S_n` of subgroups ("n-slices"). This crate builds the
//! slice poset, the table of marks and ghost map, exact rational primitive
//! idempotents, the connected components of the prime spectrum, simplicial
//! face/degeneracy operators and the elementary biset operations, and checks
//! each closed formula against brute-force computations on explicit G-sets.

pub mod biset;
pub mod bitset;
pub mod cokernel;
pub mod error;
pub mod group;
pub mod idempotents;
pub mod lattice;
pub mod named;
pub mod ring;
pub mod simplex;
pub mod slices;
pub mod spectrum;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{group_from_generators, DirectProduct, FiniteGroup, GroupHom, Permutation};
pub use lattice::{Subgroup, SubgroupId, SubgroupLattice};
pub use named::named_group;
pub use ring::{BurnsideElt, GhostVector, QBurnsideElt};
pub use simplex::{GSet, SimplexInstance};
pub use slices::{Slice, SliceClassTable, DEFAULT_MAX_SLICES};
