//! Computation with finite semigroups and the structure theory of
//! generalized inverse semigroups.
//!
//! The crate is organized bottom-up:
//!
//! - [`semigroup`]: Cayley tables, classification, Green's relations and the
//!   natural partial order;
//! - [`congruence`]: γ, λ, ρ, quotients and the subdirect decomposition;
//! - [`presheaf`]: presheaves of sets over finite meet semilattices and their
//!   right normal bands;
//! - [`etale`]: étale actions of inverse semigroups and free étale sets;
//! - [`yamada`]: right Yamada semigroups and the decomposition `κ`;
//! - [`morita`]: Yamada semigroups, tensor products of S-sets and the
//!   Morita semigroup isomorphism `θ`;
//! - [`madhavan`]: the semigroups `M_ρ(X)` of ρ-compatible partial functions;
//! - [`enumerate`]: exhaustive small-order enumeration up to isomorphism.

pub mod congruence;
pub mod enumerate;
pub mod etale;
pub mod format;
pub mod madhavan;
pub mod morita;
pub mod morphism;
pub mod partition;
pub mod presheaf;
pub mod semigroup;
pub mod yamada;

pub use partition::Partition;
pub use semigroup::{Classification, Elem, FiniteSemigroup, SemigroupError};
