//! Exact search and verification for weak Δ-systems, equilateral triangles
//! in the Boolean cube, sunflowers in weight slices and capsets in `F_3^n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`vector`] and [`family`]: points of `{0,1}^n` and `F_3^n`, families of
//!   them, and the `.fam` text format;
//! - [`structures`]: triple predicates and family-level freeness checks with
//!   re-verifiable certificates;
//! - [`reductions`]: XOR translation, weight slicing, the projection
//!   `F_3^n -> {0,1}^n` and its preimage, dense translates;
//! - [`search`]: exact extremal numbers by branch and bound;
//! - [`bounds`]: numeric evaluation of the asymptotic bounds.
//!
//! ```
//! use weak_delta::search::{g3, SearchConfig};
//!
//! let result = g3(2, &SearchConfig::sequential()).unwrap();
//! assert_eq!(result.extremal_size, 3);
//! ```

pub mod bounds;
pub mod error;
pub mod family;
pub mod reductions;
pub mod search;
pub mod structures;
pub mod vector;

pub use error::{Error, Result};
pub use family::{parse_family, AnyFamily, BinaryFamily, Family, TernaryFamily};
pub use structures::{Alphabet, StructureKind, ViolationCertificate};
pub use vector::{BinaryVector, Point, TernaryVector, MAX_DIM};

/// The guide in `book/` and the README, compiled so their listings run as
/// doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/vectors.md")]
    mod vectors {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
