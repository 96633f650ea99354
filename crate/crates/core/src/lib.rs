//! Elation groups with a common center and axis in PG(r−1, p^h), Singer
//! orbits on projective subspaces, and the exact counts relating them.
//!
//! The crate is layered bottom-up: [`gf`] and [`combinat`] supply exact
//! arithmetic, [`pspace`] canonical subspaces, [`singer`] orbit censuses,
//! [`elation`] the classification of elation groups and [`bruckbose`] the
//! field-reduction model in which their orbits are affine subspaces.

pub mod bruckbose;
pub mod cli;
pub mod combinat;
pub mod elation;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod pspace;
pub mod selftest;
pub mod singer;

pub use error::{Error, Result};
pub use gf::{make_field, Elem, FieldReduction, FieldTower};
pub use matrix::Matrix;
pub use pspace::{ProjPoint, Subspace, SubspaceFamily};
