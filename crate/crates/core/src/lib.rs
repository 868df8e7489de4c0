//! Euler characteristics of symplectic local systems V_λ on the moduli
//! space H₃ of genus-3 hyperelliptic curves, plus a finite-field census that
//! checks conjectural motivic Euler characteristics against Frobenius traces.

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod ffcount;
pub mod scalar;
pub mod strata;

use num_bigint::BigInt;
use num_rational::Ratio;

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Rational = Ratio<BigInt>;
/// Q(ζ₃₃₆) with rational coefficients.
pub type Cyclotomic = cyclotomic::CyclotomicNumber<Rational>;
/// The ring of integers Z[ζ₃₃₆], the working type for the stratified sum.
pub type CyclotomicInteger = cyclotomic::CyclotomicNumber<i128>;

pub use characters::{Partition, SpectralTriple};
pub use cyclotomic::{CyclotomicNumber, RootOfUnity};
pub use scalar::Ring;
