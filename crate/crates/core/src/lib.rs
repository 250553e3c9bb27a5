//! Exact symbolic toolkit for finite-dimensional real graded division algebras.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod equivalence;
pub mod error;
pub mod group;
pub mod invariants;
pub mod normalize;

pub use algebra::{Bicharacter, IdentityKind, Presentation, QuatUnit, Sign, UnitMonomial};
pub use catalog::Factor;
pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, GroupElement};
