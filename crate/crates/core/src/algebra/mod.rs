//! Exact arithmetic: zero-extended binomials, multi-indices, divided-power
//! series and graded integer polynomials.

mod binomial;
pub mod linalg;
mod poly;
mod series;

pub use binomial::binomial_z;
pub use poly::GradedPoly;
pub use series::{Bounds, GWSeries, SeriesKey, COMPLETE};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exponent vector over a fixed, context-dependent list of variables.
pub type MultiIndex = Vec<u32>;

pub fn total_degree(n: &[u32]) -> u32 {
    n.iter().sum()
}

pub fn add_indices(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Integer value of a rational, if it has denominator one.
pub fn to_integer(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}
