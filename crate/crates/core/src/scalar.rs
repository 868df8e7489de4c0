//! The coefficient-ring contract shared by the character engine, the
//! cyclotomic field and the quadratic extension used for Frobenius traces.
//!
//! Everything here is exact. The contract is deliberately small: the ring
//! operations from `num-traits`/`std::ops`, an embedding of the integers, and
//! exact division by a nonzero integer when the quotient exists in the ring.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Exact division by a nonzero integer, `None` when the quotient is not
    /// an element of the ring.
    fn div_exact_i64(&self, n: i64) -> Option<Self>;

    /// Multiplication by a small integer.
    fn scale_i64(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }
}

macro_rules! impl_ring_for_primitive {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            #[inline]
            fn from_i64(n: i64) -> Self {
                <$t>::try_from(n).expect("integer out of range for coefficient type")
            }

            #[inline]
            fn div_exact_i64(&self, n: i64) -> Option<Self> {
                let n = <$t>::try_from(n).ok()?;
                if n == 0 || self % n != 0 {
                    None
                } else {
                    Some(self / n)
                }
            }

            #[inline]
            fn scale_i64(&self, n: i64) -> Self {
                self * <$t>::from_i64(n)
            }
        }
    )*};
}

impl_ring_for_primitive!(i64, i128);

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn div_exact_i64(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let (q, r) = self.div_rem(&BigInt::from(n));
        r.is_zero().then_some(q)
    }
}

impl<T> Ring for Ratio<T>
where
    T: Clone + Integer + Debug + Send + Sync + Ring,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n))
    }

    fn div_exact_i64(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        Some(self.clone() / Ratio::from_integer(T::from_i64(n)))
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Ring>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}
