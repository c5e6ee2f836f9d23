//! Exact counts of rational curves in `P^n` through general linear
//! subspaces, with and without one node.
//!
//! [`genus0`] holds the genus-0 numbers and one-point descendants,
//! [`vbar`] the intersection numbers on spaces of curve tuples with a common
//! point, and [`nodal`] assembles the correction term and the one-nodal count.
//! The genus-one input `RT_{1,d}` is read from a fixture table.
//!
//! ```
//! use nodalcount::nodal::Calculator;
//! use nodalcount::problem::ProblemSpec;
//!
//! let calc = Calculator::new(3);
//! let four_lines = ProblemSpec::new(3, 1, vec![2, 2, 2, 2]).unwrap();
//! assert_eq!(nodalcount::format_rational(&calc.count_rational(&four_lines).unwrap()), "2");
//! ```

pub mod cache;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod genus0;
pub mod nodal;
pub mod problem;
pub mod selftest;
pub mod vbar;

pub use error::{Error, Result};

use num_bigint::BigInt;

/// Arbitrary-precision signed rational; every numeric result is one of these.
pub type ExactRational = num_rational::BigRational;

/// `"p"` for integers, `"p/q"` otherwise, in lowest terms.
pub fn format_rational(value: &ExactRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts non-reduced input.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let bad = || Error::Parse(format!("`{text}` is not an exact rational"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(ExactRational::new(p, q))
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    value: &ExactRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}
