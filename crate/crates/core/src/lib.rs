//! Decides whether a finite crossed module `T -> G` admits a covering
//! group, by computing its obstruction class in third group cohomology
//! two independent ways (the direct coboundary of a lifted factor set,
//! and the associator of the skeletalized 2-group), constructing the
//! cover when the class vanishes, and classifying all covers.
//!
//! The computational substrate is exact throughout: Cayley tables for
//! finite groups, invariant-factor presentations for finitely generated
//! abelian groups, and integer Smith normal form for every kernel, image,
//! and quotient.

pub mod catalog;
pub mod cohomology;
pub mod covers;
pub mod crossedmod;
pub mod error;
pub mod extensions;
pub mod group;
pub mod matrix;
pub mod module;
pub mod obstruction;
pub mod twogroup;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom};
pub use matrix::{smith_normal_form, IntMatrix};
pub use module::{AbelianElement, FgAbelianModule, ModuleShape};
