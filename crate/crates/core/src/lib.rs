//! Zonal polynomials, multivariate gamma functions, and numerical checks of
//! Laplace integrals with matrix arguments.
//!
//! The central object is the exact table of zonal polynomials `C_κ` in the
//! monomial basis ([`zonal::build_table`]). Around it sit:
//!
//! - [`partitions`]: dominance order, conjugates, dual partitions
//! - [`symfun`]: symmetric-function bases and the α = 2 inner product
//! - [`specfun`]: `Γ`, `Γ_m`, Pochhammer symbols, the integral constants
//! - [`linalg`], [`randmat`]: small symmetric matrices and Wishart sampling
//! - [`verify`]: Monte Carlo, interpolation and quadrature checks
//!
//! ```
//! use matargs::linalg::SpdMatrix;
//! use matargs::verify::theorem1_expected;
//! use matargs::zonal::build_table;
//!
//! let table = build_table(2)?;
//! // E[C_(2)(X⁻¹)] for X ~ W_2(8, I/2), under both constants.
//! let (correct, incorrect) =
//!     theorem1_expected(&table, 4.0, &"2".parse()?, &SpdMatrix::identity(2))?;
//! assert!((correct / incorrect - 1.6).abs() < 1e-12);
//! # Ok::<(), matargs::error::Error>(())
//! ```
//!
//! The guide in `book/` walks through each piece; its code blocks run as
//! doctests of this crate.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod partitions;
pub mod randmat;
pub mod specfun;
pub mod symfun;
pub mod verify;
pub mod zonal;

pub use error::{Error, Result};

// Compile and run every code block in the guide with `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/zonal.md")]
    mod zonal {}
    #[doc = include_str!("../../../book/src/gamma.md")]
    mod gamma {}
    #[doc = include_str!("../../../book/src/laplace.md")]
    mod laplace {}
    #[doc = include_str!("../../../book/src/highest_weight.md")]
    mod highest_weight {}
    #[doc = include_str!("../../../book/src/reproducibility.md")]
    mod reproducibility {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
