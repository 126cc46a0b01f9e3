pub mod checks;
pub mod cosets;
pub mod error;
pub mod finite;
pub mod fox;
pub mod gradients;
pub mod homology;
pub mod linalg;
pub mod meataxe;
pub mod presentations;
pub mod rational;
pub mod rewriting;

pub use error::{Error, Result};

// Book chapters are compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/fox.md")]
    mod fox {}
    #[doc = include_str!("../../../book/src/finite.md")]
    mod finite {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
