//! Permutation groups, coset actions, subgroup lattices of small symmetric
//! and alternating groups, and genera of subcovers of a Galois branched
//! cover of the line computed from monodromy data.
//!
//! Products of permutations are read left to right throughout: `p * q`
//! applies `p` first.

pub mod actions;
mod chain;
pub mod covers;
pub mod error;
pub mod group;
pub mod io;
pub mod lattice;
pub mod perm;

pub use actions::{
    actions_isomorphic, actions_permutation_isomorphic, coset_action, natural_action,
    omega_ell_action, ActionElementReport, ActionLabels, GroupAction, Rational,
};
pub use covers::{
    genus_from_action, genus_natural_oracle, genus_subcover, table1, validate_tuple, GenusReport,
    MonodromyTuple, Table1Row, VerifyReport,
};
pub use error::{Error, Result};
pub use group::{BlockSystem, ElementClass, PermGroup};
pub use lattice::{
    all_subgroup_classes, is_maximal, maximal_transitive_subgroups, Lattice, MaximalIn,
    MaximalMode, SubgroupClass,
};
pub use perm::{CycleType, Permutation};
