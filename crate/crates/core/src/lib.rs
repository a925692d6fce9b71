pub mod aut;
pub mod calculus;
pub mod cochain;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph_file;
pub mod linalg;
pub mod mayer_vietoris;
pub mod morphism;
pub mod orientation;
pub mod random;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/mayer_vietoris.md")]
    mod mayer_vietoris {}
    #[doc = include_str!("../../../book/src/natural_orientations.md")]
    mod natural_orientations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
