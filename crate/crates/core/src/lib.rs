//! Exhaustive computation of the Quillen lifting property between
//! homomorphisms of finite groups, with decidable characterizations of the
//! resulting orthogonal classes and a harness that checks claimed
//! characterizations against bounded pools.

pub mod budget;
pub mod catalog;
pub mod classes;
pub mod error;
pub mod factorize;
pub mod group;
pub mod hom;
pub mod io;
pub mod lifting;
pub mod verify;

pub use budget::Budget;
pub use classes::{ClassId, Membership};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupRef, Subgroup};
pub use hom::{Homomorphism, PresentedMorphism, Word};
pub use lifting::{LiftStatus, LiftVerdict, Lifter, Morphism, MorphismPool};
