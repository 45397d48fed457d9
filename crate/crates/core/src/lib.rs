//! Finite groups with the Magnus property.
//!
//! Groups are index sets `0..order` (0 is the identity) behind a multiplication
//! oracle. On top of that sit normal-subgroup and subgroup-lattice machinery,
//! the MP/SMP decision procedure, the named group families and the
//! classification searches.

pub mod caps;
pub mod classify;
pub mod constructors;
pub mod error;
pub mod expr;
pub mod field;
pub mod group;
pub mod lattice;
pub mod magnus;
pub mod set;
pub mod structure;

#[cfg(test)]
mod testutil;

pub use caps::Caps;
pub use error::{Error, Result};
pub use field::{FieldTable, SemilinearMap};
pub use group::{
    build_direct_product, build_from_cayley, build_from_permutations, is_isomorphic, BackendKind, Group, GroupHom,
    IsoVerdict,
};
pub use expr::{parse_expr, GroupExpr};
pub use magnus::{magnus_status, MagnusReport};
pub use set::ElementSet;
