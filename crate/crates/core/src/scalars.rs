//! Exact ground-field arithmetic over `Q` or a single real or imaginary
//! quadratic extension `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: either `Q` or `Q(sqrt d)` with `d` squarefree, `d != 0, 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    QuadExt(i64),
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidField(format!("d = {d} does not give a quadratic extension")));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidField(format!("d = {d} is not squarefree")));
        }
        Ok(FieldSpec::QuadExt(d))
    }

    pub fn radicand(self) -> Option<i64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::QuadExt(d) => Some(d),
        }
    }

    pub fn has_real_embedding(self) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::QuadExt(d) => d > 0,
        }
    }

    /// Name of the radical token, e.g. `s5`.
    pub fn radical_token(self) -> Option<String> {
        self.radicand().map(|d| format!("s{d}"))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::QuadExt(d) => write!(f, "Q(s{d})"),
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An exact element `a + b*sqrt(d)` of the ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    /// Builds `a + b*sqrt(d)`. Over `Q` the radical part must be zero.
    pub fn new(field: FieldSpec, a: BigRational, b: BigRational) -> Result<Self> {
        if field == FieldSpec::Rationals && !b.is_zero() {
            return Err(Error::InvalidField("Q has no radical part".into()));
        }
        Ok(Scalar { field, a, b })
    }

    pub fn rational(field: FieldSpec, a: BigRational) -> Self {
        Scalar {
            field,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Self {
        Self::rational(field, BigRational::from_integer(n.into()))
    }

    pub fn from_frac(field: FieldSpec, num: i64, den: i64) -> Self {
        Self::rational(field, BigRational::new(num.into(), den.into()))
    }

    /// The element `sqrt(d)` of a quadratic extension.
    pub fn sqrt_d(field: FieldSpec) -> Result<Self> {
        match field {
            FieldSpec::Rationals => Err(Error::InvalidField("Q has no radical".into())),
            FieldSpec::QuadExt(_) => Ok(Scalar {
                field,
                a: BigRational::zero(),
                b: BigRational::one(),
            }),
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of `sqrt(d)`.
    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// The value as a rational, if the radical part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(self.field.radicand().unwrap_or(0).into())
    }

    fn check_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedSpec("fields"))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(Scalar {
            field: self.field,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(Scalar {
            field: self.field,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(Scalar::rational(self.field, &self.a * &other.a));
        }
        let d = self.d();
        Ok(Scalar {
            field: self.field,
            a: &self.a * &other.a + &self.b * &other.b * d,
            b: &self.a * &other.b + &other.a * &self.b,
        })
    }

    /// Field norm `a^2 - d b^2` down to `Q`.
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d()
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn galois_conj(&self) -> Scalar {
        Scalar {
            field: self.field,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field_norm();
        // d is squarefree and != 1, so a^2 - d b^2 vanishes only at zero
        debug_assert!(!n.is_zero());
        Ok(Scalar {
            field: self.field,
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Correctly rounded dyadic approximation `m / 2^bits` of the value under
    /// the principal real embedding (`sqrt d > 0`).
    pub fn to_real(&self, bits: u32) -> Result<BigRational> {
        if let FieldSpec::QuadExt(d) = self.field {
            if d < 0 {
                return Err(Error::NoRealEmbedding(d));
            }
        }
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let half = BigRational::new(1.into(), 2.into());
        // round(x * 2^bits) = floor(x * 2^bits + 1/2)
        let m = floor_quadratic(&(&self.a * &scale + half), &(&self.b * &scale), self.d_int());
        Ok(BigRational::new(m, BigInt::one() << bits))
    }

    /// Exact sign under the principal real embedding.
    pub fn real_sign(&self) -> Result<Ordering> {
        if let FieldSpec::QuadExt(d) = self.field {
            if d < 0 {
                return Err(Error::NoRealEmbedding(d));
            }
        }
        let sign = |r: &BigRational| r.cmp(&BigRational::zero());
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sb == Ordering::Equal || sa == sb {
            return Ok(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Ok(sb);
        }
        // opposite signs: the larger of |a| and |b| sqrt d wins; d is not a square
        let d = BigRational::from_integer(self.d_int());
        Ok(if &self.a * &self.a > &self.b * &self.b * d { sa } else { sb })
    }

    /// Nearest `f64` under the principal real embedding.
    pub fn to_f64(&self) -> Result<f64> {
        if self.b.is_zero() {
            return Ok(ratio_to_f64(&self.a));
        }
        Ok(ratio_to_f64(&self.to_real(80)?))
    }

    fn d_int(&self) -> BigInt {
        self.field.radicand().unwrap_or(0).into()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `floor(u + v sqrt(d))` for rationals `u, v` and `d >= 0` not a perfect square
/// (or `v = 0`).
fn floor_quadratic(u: &BigRational, v: &BigRational, d: BigInt) -> BigInt {
    if v.is_zero() || d.is_zero() {
        return u.floor().to_integer();
    }
    // common denominator w: u = p/w, v^2 d = q/w^2, so the value is (p ± sqrt q)/w
    let w = u.denom().lcm(v.denom());
    let p = (u * BigRational::from_integer(w.clone())).to_integer();
    let vw = (v * BigRational::from_integer(w.clone())).to_integer();
    let q = &vw * &vw * d;
    let s = q.sqrt();
    let exact = &s * &s == q;
    let n = if v.is_positive() {
        p + s
    } else if exact {
        p - s
    } else {
        p - s - 1
    };
    n.div_floor(&w)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rad = match self.field.radical_token() {
            Some(t) if !self.b.is_zero() => t,
            _ => return write!(f, "{}", self.a),
        };
        let radical = |f: &mut fmt::Formatter<'_>, b: &BigRational| {
            if b.is_one() {
                write!(f, "{rad}")
            } else {
                write!(f, "{b}*{rad}")
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
            return radical(f, &self.b.abs());
        }
        write!(f, "{}", self.a)?;
        write!(f, "{}", if self.b.is_negative() { " - " } else { " + " })?;
        radical(f, &self.b.abs())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("Scalar::", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
