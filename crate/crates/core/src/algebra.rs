//! The element interface shared by quaternion and octonion algebras, so that
//! polynomials and orbits can be written once for both.

use std::fmt;

use crate::error::Result;
use crate::scalars::{FieldSpec, Scalar};

/// An element of a finite-dimensional unital algebra over a [`FieldSpec`]
/// with a canonical involution and a multiplicative quadratic norm.
///
/// Binary operations panic on mismatched specs; the concrete types expose
/// `checked_*` variants for the recoverable path.
pub trait Element: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Spec: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    /// True when multiplication is associative (quaternions).
    const ASSOCIATIVE: bool;

    fn spec(&self) -> &Self::Spec;
    fn field_of(spec: &Self::Spec) -> FieldSpec;
    fn zero(spec: &Self::Spec) -> Self;
    fn from_scalar(spec: &Self::Spec, s: Scalar) -> Self;

    fn one(spec: &Self::Spec) -> Self {
        Self::from_scalar(spec, Scalar::one(Self::field_of(spec)))
    }

    /// Coordinates over the standard basis of the algebra.
    fn coords(&self) -> Vec<Scalar>;

    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn conj(&self) -> Self;
    fn norm(&self) -> Scalar;
    fn inv(&self) -> Result<Self>;

    /// The scalar value if the element lies in the center `F`.
    fn as_scalar(&self) -> Option<Scalar>;

    fn trace(&self) -> Scalar {
        self.coords()[0].clone() + self.coords()[0].clone()
    }

    /// `x * y == y * x`, decided exactly.
    fn commutes(&self, other: &Self) -> bool {
        self.times(other) == other.times(self)
    }

    /// Left-nested power `((x x) x) ... x`; `pow(0) = 1`.
    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.spec());
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}
