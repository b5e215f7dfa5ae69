//! Exact invariants of weighted projective curves and their fuchsian
//! singularities.
//!
//! Everything is computed with arbitrary-precision integers and exact
//! rationals: Euler forms on the reduced Grothendieck group, Coxeter
//! transformations and their characteristic polynomials, Poincaré and
//! Hilbert series, Gorenstein parameters, and an exhaustive search for
//! hypersurface presentations with matching numerical data.
//!
//! ```
//! use fuchsian_core::ktheory::Signature;
//! use fuchsian_core::singularity::coxeter_polynomial_t;
//!
//! let sig: Signature = "2;".parse().unwrap();
//! assert_eq!(coxeter_polynomial_t(&sig).unwrap().to_string(), "x^3+1");
//! ```

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod exactalg;
pub mod ktheory;
pub mod search;
pub mod singularity;

pub use error::{Error, Result};
