pub mod algebra;
pub mod degrees;
pub mod dynatomic;
pub mod error;
pub mod localmult;
pub mod spectral;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/multiplicities.md")]
    pub mod multiplicities {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    pub mod spectral {}
    #[doc = include_str!("../../../book/src/dynatomic.md")]
    pub mod dynatomic {}
    #[doc = include_str!("../../../book/src/degrees.md")]
    pub mod degrees {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
