//! Scalar traits the matrix code is generic over.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Commutative ring with exact equality (integers, rationals) or
/// approximate equality (floats).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// A ring whose `/` is the field division.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for f32 {}
impl Field for f64 {}
impl<I> Field for Ratio<I> where I: Integer + Signed + Clone + Debug {}

/// A signed integral domain in which `/` is exact whenever the divisor
/// divides the dividend. Fraction-free elimination runs over these.
pub trait IntegralDomain: Ring + Integer + Signed + Display {}

impl<I> IntegralDomain for I where I: Ring + Integer + Signed + Display {}
