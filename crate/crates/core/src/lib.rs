//! Exact computations with groups of tree automorphisms whose local action is
//! prescribed by a pair of permutation groups `F ≤ F'`: `F'` everywhere and `F`
//! at all but finitely many vertices.

pub mod criteria;
pub mod gff;
pub mod perm;
pub mod portrait;
pub mod tree;
pub mod wreath;

pub use gff::{GffError, GroupPair};
pub use perm::{construct_group, Perm, PermError, PermGroup};
pub use portrait::{Portrait, PortraitError};
pub use tree::{CompleteSubtree, TreeError, Vertex};
