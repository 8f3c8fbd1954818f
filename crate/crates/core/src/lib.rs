//! Finite monoids, their actions, and the geometric morphisms between
//! presheaf toposes on them.
//!
//! A semigroup homomorphism φ: M → N, or more generally a biaction of N and
//! M that is flat on the left, determines a geometric morphism
//! PSh(M) → PSh(N). This crate decides which properties such a morphism has
//! (surjection, inclusion, hyperconnected, localic, terminal-connected,
//! étale, pure, complete spread, spread, injection, locally constant étale),
//! computes its factorizations, and classifies locally constant étale
//! morphisms through the groupification of N.

pub mod actions;
pub mod classify;
pub mod category;
pub mod closures;
pub mod congruence;
pub mod dsu;
pub mod equivariant;
pub mod error;
pub mod factorize;
pub mod fixtures;
pub mod galois;
pub mod hom;
pub mod io;
pub mod monoid;
pub mod presentation;
pub mod tensor;

pub use actions::{Acts, BiAction, EquivariantMap, LeftAction, RightAction};
pub use classify::{classify_biact, classify_hom, ClassificationReport, Property, SearchLimits, Verdict};
pub use category::{FiniteCategory, FunctorData, Presheaf};
pub use congruence::{Congruence, Sidedness};
pub use error::{Error, Result};
pub use hom::SemigroupHom;
pub use monoid::{FiniteMonoid, Side};
