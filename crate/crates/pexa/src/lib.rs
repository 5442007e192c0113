//! Exact finite enumeration for proto-exact categories of modules over
//! semirings and hyperrings.
//!
//! The crate works with three categories of finite objects:
//!
//! * modules over a finite semiring ([`smod`]), with admissible monos the
//!   injections onto saturated submodules and admissible epis the congruence
//!   quotients by saturated submodules;
//! * finite lattices with join-preserving maps ([`lattice`]), equivalent to
//!   finite modules over the Boolean semifield `B`;
//! * modules over a finite hyperring ([`hmod`]) with strict injections and
//!   strict surjections; Krasner-hyperfield modules are finite projective
//!   geometries ([`geometry`]).
//!
//! [`exactness`] runs the category-generic machinery on top: short exact
//! sequences, extension classes, Hall numbers and a bounded check of the
//! proto-exact axioms.
//!
//! Everything is computed by exhaustive search over explicit operation
//! tables, so every structure is small: carriers have at most
//! [`MAX_ELEMENTS`] elements and most enumerations are exponential.
//!
//! ```
//! use std::sync::Arc;
//! use pexa::smod::{saturation_closure, FiniteModule};
//! use pexa::tables::boolean;
//! use pexa::Mask;
//!
//! let b2 = FiniteModule::free(Arc::new(boolean()), 2)?;
//! // (1,1) sits at index 3; everything below it joins the closure.
//! assert_eq!(saturation_closure(&b2, Mask::singleton(3)), b2.all());
//! # Ok::<(), pexa::Error>(())
//! ```

pub mod error;
pub mod exactness;
pub mod generate;
pub mod geometry;
pub mod hmod;
pub mod lattice;
pub mod mask;
pub mod morphism;
pub mod report;
pub mod search;
pub mod smod;
pub mod tables;

pub use error::{Error, Result};
pub use mask::{Mask, MAX_ELEMENTS};
pub use morphism::{Morphism, MorphismClass};
pub use report::{AxiomReport, Violation};
pub use search::Structure;

/// Default bound on structure sizes accepted by front ends.
///
/// The projective plane over `F_5` has 32 elements, which is the largest
/// structure in the worked examples.
pub const DEFAULT_MAX_SIZE: usize = 32;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/semirings-and-hyperrings.md")]
    pub mod semirings_and_hyperrings {}
    #[doc = include_str!("../../../book/src/saturation-and-quotients.md")]
    pub mod saturation_and_quotients {}
    #[doc = include_str!("../../../book/src/admissible-morphisms-and-squares.md")]
    pub mod admissible_morphisms_and_squares {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    pub mod lattices {}
    #[doc = include_str!("../../../book/src/hypermodules.md")]
    pub mod hypermodules {}
    #[doc = include_str!("../../../book/src/exact-sequences-and-hall.md")]
    pub mod exact_sequences_and_hall {}
    #[doc = include_str!("../../../book/src/projective-geometry.md")]
    pub mod projective_geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
