//! Exact computations with finite-group-invariant Lie algebra structures over
//! finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`gfla`]: fields GF(p^k), dense matrices, polynomials, Jordan types.
//! * [`modrep`]: group representations, Hom spaces, MeatAxe, invariant forms.
//! * [`cohom`]: first cohomology from a finite presentation.
//! * [`liealg`]: structure constants, profiles, Chevalley bases, type identification.
//! * [`roots`]: root systems and maximal abelian subalgebra dimensions.
//! * [`lieproduct`]: classifying invariant brackets on a module.
//! * [`subalg`]: locating a target algebra inside a symplectic algebra.

pub mod error;
pub mod gfla;

pub use error::{Error, Result};
pub mod modrep;
pub mod cohom;
pub mod roots;
pub mod liealg;
pub mod lieproduct;
pub mod subalg;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/lie-algebras.md")]
    mod lie_algebras {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/lie-products.md")]
    mod lie_products {}
    #[doc = include_str!("../../../book/src/subalgebras.md")]
    mod subalgebras {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
