//! Latin squares, transversals, orthogonal systems, matchings and
//! permanents, computed exactly.
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doctests of this crate.

pub mod data;
pub mod error;
pub mod exact_cover;
pub mod io;
pub mod latin;
pub mod matching;
pub mod matrix;
pub mod mols;
pub mod permanents;
pub mod problems;
pub mod random;
pub mod transversals;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/latin-squares.md")]
    mod latin_squares {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/transversals.md")]
    mod transversals {}
    #[doc = include_str!("../../../book/src/orthogonal-systems.md")]
    mod orthogonal_systems {}
    #[doc = include_str!("../../../book/src/permanents.md")]
    mod permanents {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
