//! Scalar abstraction: the library is generic over the real floating type
//! (`f32` or `f64`) and, where complex arguments make sense, over the field
//! (the real type itself or `Complex` over it).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, One, Zero};

/// Real floating-point scalar: f32 or f64.
pub trait Real:
    Float + FromPrimitive + Field<Re = Self> + Debug + Display + Send + Sync + 'static
{
    /// Convert an f64 constant into this type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }
    fn as_f64(self) -> f64;
}

impl Real for f32 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn as_f64(self) -> f64 {
        self
    }
}

/// Field the series evaluators run over: real or complex built on a [`Real`].
pub trait Field:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
{
    type Re: Real;

    fn from_real(r: Self::Re) -> Self;
    /// |x|: absolute value or complex modulus.
    fn modulus(self) -> Self::Re;
    fn scale(self, r: Self::Re) -> Self;
    fn is_finite(self) -> bool;
}

macro_rules! impl_field_real {
    ($t:ty) => {
        impl Field for $t {
            type Re = $t;

            fn from_real(r: $t) -> Self {
                r
            }
            fn modulus(self) -> $t {
                self.abs()
            }
            fn scale(self, r: $t) -> Self {
                self * r
            }
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }
    };
}

macro_rules! impl_field_complex {
    ($t:ty) => {
        impl Field for Complex<$t> {
            type Re = $t;

            fn from_real(r: $t) -> Self {
                Complex::new(r, 0.0)
            }
            fn modulus(self) -> $t {
                self.norm()
            }
            fn scale(self, r: $t) -> Self {
                self * r
            }
            fn is_finite(self) -> bool {
                self.re.is_finite() && self.im.is_finite()
            }
        }
    };
}

impl_field_real!(f32);
impl_field_real!(f64);
impl_field_complex!(f32);
impl_field_complex!(f64);
