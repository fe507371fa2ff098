//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};
use std::hash::{Hash, Hasher};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point coordinate type used throughout the planner.
///
/// Implemented for `f32` and `f64`. The associated tolerances scale with the
/// precision of the type; `f64` uses the absolute band of `1e-9` for
/// collinearity and boundary decisions.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for orientation and boundary classification.
    fn geom_eps() -> Self;

    /// Tolerance used when comparing cable or path lengths against bounds.
    fn length_eps() -> Self;

    /// Converts an `f64` literal, panicking only if the type cannot hold it.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    #[inline]
    fn geom_eps() -> Self {
        1e-9
    }
    #[inline]
    fn length_eps() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    #[inline]
    fn geom_eps() -> Self {
        1e-4
    }
    #[inline]
    fn length_eps() -> Self {
        1e-4
    }
}

/// Bitwise identity of a scalar, usable as a hash-map key.
///
/// Two keys are equal exactly when the decoded mantissa, exponent and sign
/// agree, so `0.0` and `-0.0` are distinct; callers normalise signed zero
/// before keying.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScalarKey(u64, i16, i8);

impl ScalarKey {
    pub fn of<T: Scalar>(v: T) -> Self {
        let v = if v == T::zero() { T::zero() } else { v };
        let (m, e, s) = v.integer_decode();
        ScalarKey(m, e, s)
    }
}

impl Hash for ScalarKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
        self.1.hash(state);
        self.2.hash(state);
    }
}

/// Total order on finite scalars; NaN compares equal to everything.
#[inline]
pub fn cmp_scalar<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
}
