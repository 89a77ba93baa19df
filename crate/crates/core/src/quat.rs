//! Generalized quaternion algebras `(alpha, beta / F)`: basis `1, i, j, k`
//! with `i^2 = alpha`, `j^2 = beta`, `ji = -ij`, `k = ij`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatSpec {
    field: FieldSpec,
    alpha: Scalar,
    beta: Scalar,
}

impl QuatSpec {
    /// The algebra is not required to be a division ring; split elements are
    /// diagnosed when inverted.
    pub fn new(field: FieldSpec, alpha: Scalar, beta: Scalar) -> Result<Arc<Self>> {
        if alpha.field() != field || beta.field() != field {
            return Err(Error::MixedSpec("fields"));
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidAlgebra("alpha and beta must be nonzero".into()));
        }
        Ok(Arc::new(QuatSpec { field, alpha, beta }))
    }

    /// `(-1, -1 / F)`; Hamilton's quaternions when `F` is formally real.
    pub fn hamilton(field: FieldSpec) -> Arc<Self> {
        let m1 = Scalar::from_int(field, -1);
        Arc::new(QuatSpec {
            field,
            alpha: m1.clone(),
            beta: m1,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }
}

impl fmt::Display for QuatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quat:{},{}@{}", self.alpha, self.beta, self.field)
    }
}

/// `a + b i + c j + e k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    spec: Arc<QuatSpec>,
    c: [Scalar; 4],
}

impl Quaternion {
    pub fn new(spec: &Arc<QuatSpec>, a: Scalar, b: Scalar, c: Scalar, e: Scalar) -> Result<Self> {
        if [&a, &b, &c, &e].iter().any(|s| s.field() != spec.field) {
            return Err(Error::MixedSpec("fields"));
        }
        Ok(Quaternion {
            spec: Arc::clone(spec),
            c: [a, b, c, e],
        })
    }

    /// Integer coordinates, handy for tests and presets.
    pub fn from_ints(spec: &Arc<QuatSpec>, c: [i64; 4]) -> Self {
        let f = spec.field;
        Quaternion {
            spec: Arc::clone(spec),
            c: c.map(|v| Scalar::from_int(f, v)),
        }
    }

    pub fn basis(spec: &Arc<QuatSpec>, index: usize) -> Self {
        let mut c = [0; 4];
        c[index] = 1;
        Self::from_ints(spec, c)
    }

    pub fn i(spec: &Arc<QuatSpec>) -> Self {
        Self::basis(spec, 1)
    }

    pub fn j(spec: &Arc<QuatSpec>) -> Self {
        Self::basis(spec, 2)
    }

    pub fn k(spec: &Arc<QuatSpec>) -> Self {
        Self::basis(spec, 3)
    }

    pub fn coord(&self, index: usize) -> &Scalar {
        &self.c[index]
    }

    pub fn coordinates(&self) -> &[Scalar; 4] {
        &self.c
    }

    pub fn quat_spec(&self) -> &Arc<QuatSpec> {
        &self.spec
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedSpec("quaternion algebras"))
        }
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Quaternion {
            spec: Arc::clone(&self.spec),
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3])],
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        Quaternion {
            spec: Arc::clone(&self.spec),
            c: [
                f(&self.c[0], &other.c[0]),
                f(&self.c[1], &other.c[1]),
                f(&self.c[2], &other.c[2]),
                f(&self.c[3], &other.c[3]),
            ],
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let al = &self.spec.alpha;
        let be = &self.spec.beta;
        let [a1, b1, c1, e1] = &self.c;
        let [a2, b2, c2, e2] = &other.c;
        let ab = al * be;
        let re = a1 * a2 + al * &(b1 * b2) + be * &(c1 * c2) - &ab * &(e1 * e2);
        let i = a1 * b2 + b1 * a2 + be * &(e1 * c2 - c1 * e2);
        let j = a1 * c2 + c1 * a2 + al * &(b1 * e2 - e1 * b2);
        let k = a1 * e2 + e1 * a2 + b1 * c2 - c1 * b2;
        Ok(Quaternion {
            spec: Arc::clone(&self.spec),
            c: [re, i, j, k],
        })
    }

    /// `z^2 - t z + n == 0`, i.e. `z` lies in the class with trace `t` and norm `n`
    /// (or is a central root of that quadratic).
    pub fn in_class(&self, trace: &Scalar, norm: &Scalar) -> bool {
        let sq = self.times(self);
        let lhs = sq.minus(&self.scale(trace));
        let n = Quaternion::from_scalar(&self.spec, norm.clone());
        lhs.plus(&n).is_zero()
    }
}

impl Element for Quaternion {
    type Spec = Arc<QuatSpec>;
    const ASSOCIATIVE: bool = true;

    fn spec(&self) -> &Arc<QuatSpec> {
        &self.spec
    }

    fn field_of(spec: &Arc<QuatSpec>) -> FieldSpec {
        spec.field
    }

    fn zero(spec: &Arc<QuatSpec>) -> Self {
        Self::from_ints(spec, [0; 4])
    }

    fn from_scalar(spec: &Arc<QuatSpec>, s: Scalar) -> Self {
        let z = Scalar::zero(spec.field);
        Quaternion {
            spec: Arc::clone(spec),
            c: [s, z.clone(), z.clone(), z],
        }
    }

    fn coords(&self) -> Vec<Scalar> {
        self.c.to_vec()
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("Quaternion::plus")
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("Quaternion::minus")
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("Quaternion::times")
    }

    fn negated(&self) -> Self {
        self.map(|x| -x)
    }

    fn scale(&self, s: &Scalar) -> Self {
        self.map(|x| s * x)
    }

    fn conj(&self) -> Self {
        Quaternion {
            spec: Arc::clone(&self.spec),
            c: [
                self.c[0].clone(),
                -&self.c[1],
                -&self.c[2],
                -&self.c[3],
            ],
        }
    }

    fn norm(&self) -> Scalar {
        let [a, b, c, e] = &self.c;
        let al = &self.spec.alpha;
        let be = &self.spec.beta;
        a * a - al * &(b * b) - be * &(c * c) + &(al * be) * &(e * e)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::SplitElement(self.to_string()));
        }
        let ninv = n.inv()?;
        Ok(self.conj().scale(&ninv))
    }

    fn as_scalar(&self) -> Option<Scalar> {
        self.c[1..]
            .iter()
            .all(Scalar::is_zero)
            .then(|| self.c[0].clone())
    }
}

/// Writes `sum coord_i * basis_i` in the canonical textual form shared by
/// quaternions and octonions.
pub(crate) fn write_element(
    f: &mut fmt::Formatter<'_>,
    coords: &[Scalar],
    basis: &[&str],
) -> fmt::Result {
    let mut first = true;
    for (c, name) in coords.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        if name.is_empty() {
            write!(f, "{c}")?;
            first = false;
            continue;
        }
        let compound = !c.rational_part().is_zero() && !c.radical_part().is_zero();
        if compound {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{name}")?;
            first = false;
            continue;
        }
        let negative = c.rational_part().is_negative() || c.radical_part().is_negative();
        let abs = if negative { -c } else { c.clone() };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if abs.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{abs}*{name}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_element(f, &self.c, &["", "i", "j", "k"])
    }
}

macro_rules! element_ops {
    ($ty:ty) => {
        impl<'a> std::ops::Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                $crate::algebra::Element::plus(self, rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                $crate::algebra::Element::minus(self, rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                $crate::algebra::Element::times(self, rhs)
            }
        }
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $crate::algebra::Element::negated(self)
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

pub(crate) use element_ops;

element_ops!(Quaternion);
