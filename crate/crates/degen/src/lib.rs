//! Exact-arithmetic toolkit for partial abelianisations of classical Lie
//! algebras.
//!
//! The crate constructs classical root systems in ε-coordinates, the cone of
//! degree vectors compatible with the root addition law, the distinguished
//! subcones attached to a set of cut positions on the Dynkin diagram, the
//! diagram-stretching maps into a higher-rank system of the same family, the
//! Weyl group element whose inversion set matches the stretched image, and
//! the character/dimension machinery (Demazure operators, Weyl dimension
//! formula, chain polytopes, explicit wedge modules) needed to machine-check
//! every finitary statement of the theory at small rank.
//!
//! All arithmetic is exact: integers, big rationals and an exact rational
//! simplex solver. No floating point anywhere.

pub mod chevalley;
pub mod cones;
pub mod demazure;
pub mod error;
pub mod gradedmod;
pub mod polytopes;
pub mod ratlp;
pub mod report;
pub mod rootsys;
pub mod stretch;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
