//! Exact arithmetic: rationals, cyclotomic fields and Hilbert symbols.

pub mod cyclotomic;
pub mod hilbert;
pub mod numtheory;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_unit, Cyclotomic};
pub use hilbert::{hilbert_symbol, ramified_places, quaternion_splits_over_rationals, QuaternionParams};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
