//! Octonion algebras `Q + Q l` obtained by Cayley-Dickson doubling of a
//! quaternion algebra with `l^2 = gamma`:
//!
//! `(q + r l)(s + t l) = qs + gamma conj(t) r + (t q + r conj(s)) l`
//!
//! Multiplication is alternative but not associative.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::quat::{element_ops, write_element, QuatSpec, Quaternion};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OctSpec {
    quat: Arc<QuatSpec>,
    gamma: Scalar,
}

impl OctSpec {
    pub fn new(quat: Arc<QuatSpec>, gamma: Scalar) -> Result<Arc<Self>> {
        if gamma.field() != quat.field() {
            return Err(Error::MixedSpec("fields"));
        }
        if gamma.is_zero() {
            return Err(Error::InvalidAlgebra("gamma must be nonzero".into()));
        }
        Ok(Arc::new(OctSpec { quat, gamma }))
    }

    /// Classical octonions over `F`: `(-1, -1 / F)` doubled with `gamma = -1`.
    pub fn classical(field: FieldSpec) -> Arc<Self> {
        Arc::new(OctSpec {
            quat: QuatSpec::hamilton(field),
            gamma: Scalar::from_int(field, -1),
        })
    }

    pub fn quat(&self) -> &Arc<QuatSpec> {
        &self.quat
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }
}

impl fmt::Display for OctSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "oct:{},{},{}@{}",
            self.quat.alpha(),
            self.quat.beta(),
            self.gamma,
            self.quat.field()
        )
    }
}

/// `q + r l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    spec: Arc<OctSpec>,
    q: Quaternion,
    r: Quaternion,
}

pub const OCT_BASIS: [&str; 8] = ["", "i", "j", "k", "l", "il", "jl", "kl"];

impl Octonion {
    pub fn new(spec: &Arc<OctSpec>, q: Quaternion, r: Quaternion) -> Result<Self> {
        if q.quat_spec() != &spec.quat || r.quat_spec() != &spec.quat {
            return Err(Error::MixedSpec("quaternion algebras"));
        }
        Ok(Octonion {
            spec: Arc::clone(spec),
            q,
            r,
        })
    }

    pub fn from_ints(spec: &Arc<OctSpec>, c: [i64; 8]) -> Self {
        Octonion {
            spec: Arc::clone(spec),
            q: Quaternion::from_ints(&spec.quat, [c[0], c[1], c[2], c[3]]),
            r: Quaternion::from_ints(&spec.quat, [c[4], c[5], c[6], c[7]]),
        }
    }

    /// Basis element by index into [`OCT_BASIS`].
    pub fn basis(spec: &Arc<OctSpec>, index: usize) -> Self {
        let mut c = [0; 8];
        c[index] = 1;
        Self::from_ints(spec, c)
    }

    /// The quaternion `q` embedded as `q + 0 l`.
    pub fn from_quat(spec: &Arc<OctSpec>, q: Quaternion) -> Result<Self> {
        let zero = Quaternion::zero(&spec.quat);
        Self::new(spec, q, zero)
    }

    pub fn l(spec: &Arc<OctSpec>) -> Self {
        Self::basis(spec, 4)
    }

    pub fn parts(&self) -> (&Quaternion, &Quaternion) {
        (&self.q, &self.r)
    }

    pub fn oct_spec(&self) -> &Arc<OctSpec> {
        &self.spec
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedSpec("octonion algebras"))
        }
    }

    fn with(&self, q: Quaternion, r: Quaternion) -> Self {
        Octonion {
            spec: Arc::clone(&self.spec),
            q,
            r,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(self.with(self.q.plus(&other.q), self.r.plus(&other.r)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(self.with(self.q.minus(&other.q), self.r.minus(&other.r)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let (q, r) = (&self.q, &self.r);
        let (s, t) = (&other.q, &other.r);
        let head = q.times(s).plus(&t.conj().times(r).scale(&self.spec.gamma));
        let tail = t.times(q).plus(&r.times(&s.conj()));
        Ok(self.with(head, tail))
    }
}

impl Element for Octonion {
    type Spec = Arc<OctSpec>;
    const ASSOCIATIVE: bool = false;

    fn spec(&self) -> &Arc<OctSpec> {
        &self.spec
    }

    fn field_of(spec: &Arc<OctSpec>) -> FieldSpec {
        spec.quat.field()
    }

    fn zero(spec: &Arc<OctSpec>) -> Self {
        Self::from_ints(spec, [0; 8])
    }

    fn from_scalar(spec: &Arc<OctSpec>, s: Scalar) -> Self {
        Octonion {
            spec: Arc::clone(spec),
            q: Quaternion::from_scalar(&spec.quat, s),
            r: Quaternion::zero(&spec.quat),
        }
    }

    fn coords(&self) -> Vec<Scalar> {
        let mut c = self.q.coords();
        c.extend(self.r.coords());
        c
    }

    fn is_zero(&self) -> bool {
        self.q.is_zero() && self.r.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("Octonion::plus")
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("Octonion::minus")
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("Octonion::times")
    }

    fn negated(&self) -> Self {
        self.with(self.q.negated(), self.r.negated())
    }

    fn scale(&self, s: &Scalar) -> Self {
        self.with(self.q.scale(s), self.r.scale(s))
    }

    fn conj(&self) -> Self {
        self.with(self.q.conj(), self.r.negated())
    }

    fn norm(&self) -> Scalar {
        self.q.norm() - &self.spec.gamma * &self.r.norm()
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::SplitElement(self.to_string()));
        }
        Ok(self.conj().scale(&n.inv()?))
    }

    fn as_scalar(&self) -> Option<Scalar> {
        if self.r.is_zero() {
            self.q.as_scalar()
        } else {
            None
        }
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_element(f, &self.coords(), &OCT_BASIS)
    }
}

element_ops!(Octonion);
