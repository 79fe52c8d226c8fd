//! Exact arithmetic: rationals, the tower Q ⊂ Q(ζ) ⊂ Q(ζ, ∛2), and residue maps.

mod field;
mod nf;
mod residue;

pub use field::{Field, NumberField, Rationals};
pub use nf::{parse_rational, Level, NfElem};
pub use residue::{is_split, PrimeField, ResidueMap};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
