//! Exact arithmetic for the arithmetic derivative and Dirichlet convolution.
//!
//! The crate evaluates a fixed catalog of arithmetic functions
//! ([`ArithFnId`]) exactly, convolves them, sums their Dirichlet series with
//! explicit truncation bounds, and sweeps ranges of integers to check
//! identities relating the arithmetic derivative to multiplicative
//! functions.
//!
//! ```
//! use arithderiv::{arithfn, dirichlet, ArithFnId, QValue};
//!
//! assert_eq!(arithfn::delta(12)?, QValue::from(16));
//! let lhs = dirichlet::convolve_at(ArithFnId::Id, ArithFnId::Delta, 12)?;
//! let rhs = dirichlet::f_star_delta_at(ArithFnId::Id, 12)?;
//! assert_eq!(lhs, rhs);
//! # Ok::<(), arithderiv::Error>(())
//! ```
//!
//! A longer guide lives in the `book/` directory of the repository.

pub mod arithfn;
pub mod dirichlet;
mod error;
pub mod factorint;
pub mod identities;
mod qvalue;

pub use arithfn::ArithFnId;
pub use error::{Error, Result};
pub use factorint::{Factorization, SieveTable};
pub use qvalue::QValue;

// Compile and run the guide's code blocks as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/derivative.md")]
    struct Derivative;
    #[doc = include_str!("../../../book/src/functions.md")]
    struct Functions;
    #[doc = include_str!("../../../book/src/convolution.md")]
    struct Convolution;
    #[doc = include_str!("../../../book/src/series.md")]
    struct Series;
    #[doc = include_str!("../../../book/src/identities.md")]
    struct Identities;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
