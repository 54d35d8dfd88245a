//! Exact arithmetic for p-adic interpolation data attached to
//! `GSp4 x GL2 x GL2`.

pub mod arith;
pub mod atlas;
pub mod characters;
pub mod euler;
pub mod figure;
pub mod hecke_data;
pub mod panchishkin;
pub mod qexp;
pub mod quadratic;
pub mod ring;
pub mod symplectic;
pub mod weights_regions;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/regions.md")]
    pub mod regions {}
    #[doc = include_str!("../../../book/src/panchishkin.md")]
    pub mod panchishkin {}
    #[doc = include_str!("../../../book/src/euler.md")]
    pub mod euler {}
    #[doc = include_str!("../../../book/src/characters.md")]
    pub mod characters {}
    #[doc = include_str!("../../../book/src/qexp.md")]
    pub mod qexp {}
    #[doc = include_str!("../../../book/src/symplectic.md")]
    pub mod symplectic {}
    #[doc = include_str!("../../../book/src/atlas.md")]
    pub mod atlas {}
}
