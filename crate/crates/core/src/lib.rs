//! Exact tooling for finite-dimensional Zinbiel algebras given by structure
//! constants.
//!
//! An algebra is a dense tensor `c[i][j][k]` with `e_i ∘ e_j = Σ_k c[i][j][k] e_k`
//! over exact rationals. The crate checks the Zinbiel identity
//! `(x∘y)∘z = x∘(y∘z) + x∘(z∘y)`, computes the power sequence
//! `A¹ = A, A^{k+1} = A ∘ A^k` and the invariants built on it, constructs
//! the nul-filiform, filiform and four-dimensional classification lists, and
//! separates or matches algebras up to isomorphism.
//!
//! ```
//! use zinbiel::analysis::{classify_shape, nilindex, Shape};
//! use zinbiel::catalog::make_nf;
//!
//! let nf5 = make_nf(5).unwrap();
//! assert!(nf5.zinbiel_check().holds);
//! assert_eq!(nilindex(&nf5).unwrap(), 6);
//! assert_eq!(classify_shape(&nf5), Shape::NulFiliform);
//! ```
//!
//! The guide in `book/` walks through each part with runnable examples.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod error;
pub mod iso;
pub mod linalg;
pub mod scalar;

pub use algebra::{verify_isomorphism, Algebra, BasisChange, Violation, ZinbielReport};
pub use error::{Error, Result};
pub use linalg::{row_reduce, Subspace};
pub use scalar::{Field, Quadratic, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/powers.md")]
    mod powers {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/normal-forms.md")]
    mod normal_forms {}
    #[doc = include_str!("../../../book/src/isomorphism.md")]
    mod isomorphism {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
