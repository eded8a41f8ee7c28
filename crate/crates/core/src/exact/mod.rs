//! Exact arithmetic: big rationals, cyclotomic numbers and certified
//! floating-point embeddings.

mod approx;
pub mod arith;
mod cyclotomic;

pub use approx::{ComplexApprox, DEFAULT_PRECISION};
pub use cyclotomic::{CycAccumulator, Cyclotomic};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Builds a rational `num/den`; panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Embeds an integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
