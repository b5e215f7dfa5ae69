//! Exact integer, polynomial, rational-function and power-series arithmetic.

mod cyclotomic;
mod matrix;
mod poly;
mod ratfunc;

pub use cyclotomic::{cyclotomic, factor_cyclotomic, totient, v_poly, CyclotomicFactorization};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
#[allow(unused_imports)]
pub(crate) use poly::JsonInt;
pub use ratfunc::RationalFunction;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Formats a rational as `p/q` in lowest terms with `q > 0`, or `p` when
/// `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
