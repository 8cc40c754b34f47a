//! Scalar field abstraction.
//!
//! Every exact routine in this crate is written against [`Scalar`], which is
//! satisfied by [`num_rational::BigRational`] (the default, exact field) and by
//! the primitive floats. Zero tests use `is_zero`, so only an exact field gives
//! exact verdicts; floats are supported for quick experiments on small integer
//! data.

use std::fmt;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A field element usable by the linear algebra and incidence routines.
pub trait Scalar:
    Num + Clone + Neg<Output = Self> + FromPrimitive + fmt::Debug + fmt::Display
{
    /// The ratio `num / den` as a field element.
    ///
    /// # Panics
    ///
    /// Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let n = Self::from_i64(num).expect("i64 numerator representable");
        let d = Self::from_i64(den).expect("i64 denominator representable");
        n / d
    }
}

impl<T> Scalar for T where
    T: Num + Clone + Neg<Output = T> + FromPrimitive + fmt::Debug + fmt::Display
{
}
