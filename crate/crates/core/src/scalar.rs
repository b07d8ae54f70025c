//! Exact integer scalars for linear-form arithmetic.
//!
//! Coefficients of generated forms can grow quickly (the rank 2 coefficient
//! sequences are exponential once `c1 * c2 >= 5`), so the form calculus is
//! written against [`Coeff`] and instantiated with `i64` (checked) or
//! [`BigInt`](num_bigint::BigInt) (unbounded).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use crate::error::{Error, Result};

/// An exact, signed integer scalar.
pub trait Coeff:
    Clone + Ord + Hash + Debug + Display + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Send + Sync + 'static
{
    fn add_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn sub_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    fn mul_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }
}

impl<T> Coeff for T where
    T: Clone + Ord + Hash + Debug + Display + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Send + Sync + 'static
{
}
