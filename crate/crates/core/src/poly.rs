//! Left polynomials `sum c_i x^i` over a quaternion or octonion algebra with a
//! central variable.
//!
//! Substitution `f(l) = sum c_i l^i` is *not* a ring homomorphism, and
//! composition `f(g(x)) = sum c_i g(x)^i` is not associative. [`Poly::iterate_compose`]
//! therefore follows the outer recursion `f o (f o (...))` exactly, while
//! [`Poly::star_eval`] is repeated substitution. The two differ in general.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub const DEFAULT_DEGREE_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E: Element> {
    spec: E::Spec,
    /// `coeffs[i]` multiplies `x^i`; no trailing zeros.
    coeffs: Vec<E>,
}

impl<E: Element> Poly<E> {
    pub fn new(spec: &E::Spec, coeffs: Vec<E>) -> Self {
        let mut p = Poly {
            spec: spec.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(E::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero(spec: &E::Spec) -> Self {
        Poly {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: E) -> Self {
        let spec = c.spec().clone();
        Self::new(&spec, vec![c])
    }

    pub fn one(spec: &E::Spec) -> Self {
        Self::constant(E::one(spec))
    }

    /// The identity polynomial `x`.
    pub fn x(spec: &E::Spec) -> Self {
        Self::monomial(E::one(spec), 1)
    }

    pub fn monomial(c: E, power: usize) -> Self {
        let spec = c.spec().clone();
        let mut coeffs = vec![E::zero(&spec); power];
        coeffs.push(c);
        Self::new(&spec, coeffs)
    }

    pub fn spec(&self) -> &E::Spec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> E {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| E::zero(&self.spec))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedSpec("algebras"))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).plus(&other.coeff(i))).collect();
        Ok(Self::new(&self.spec, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).minus(&other.coeff(i))).collect();
        Ok(Self::new(&self.spec, coeffs))
    }

    /// Convolution with coefficient products `c_i d_j` in that order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.spec));
        }
        let mut coeffs = vec![E::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&c.times(d));
            }
        }
        Ok(Self::new(&self.spec, coeffs))
    }

    /// `c * f`: left multiplication of every coefficient by `c`.
    pub fn left_scale(&self, c: &E) -> Self {
        Self::new(&self.spec, self.coeffs.iter().map(|d| c.times(d)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(&self.spec, self.coeffs.iter().map(|d| d.scale(s)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&E) -> E) -> Self {
        Self::new(&self.spec, self.coeffs.iter().map(f).collect())
    }

    /// Substitution `f(l) = sum c_i l^i` with left-nested powers of `l`.
    pub fn eval(&self, point: &E) -> E {
        let mut acc = E::zero(&self.spec);
        let mut power = E::one(&self.spec);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.times(point);
            }
            if !c.is_zero() {
                acc = acc.plus(&c.times(&power));
            }
        }
        acc
    }

    /// `f^t`, the `t`-fold product in the polynomial ring, left-nested; `t = 0` gives 1.
    pub fn pow(&self, t: usize) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..t {
            acc = &acc * self;
        }
        acc
    }

    /// `f(g(x)) = sum c_i g(x)^i`, each power left-nested and multiplied by
    /// `c_i` on the left.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.spec);
        let mut power = Self::one(&self.spec);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = &power * g;
            }
            if !c.is_zero() {
                acc = &acc + &power.left_scale(c);
            }
        }
        acc
    }

    /// `f^{o n}`, defined by `f^{o 1} = f` and `f^{o n} = f(f^{o (n-1)})`.
    pub fn iterate_compose(&self, n: usize, degree_cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("composition count must be at least 1".into()));
        }
        self.check_iterate_degree(n, degree_cap)?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// Errors if `deg(f)^n` exceeds `degree_cap`.
    pub fn check_iterate_degree(&self, n: usize, degree_cap: usize) -> Result<()> {
        let deg = self.degree().unwrap_or(0) as u128;
        let total = u32::try_from(n)
            .ok()
            .and_then(|n| deg.checked_pow(n))
            .unwrap_or(u128::MAX);
        if total > degree_cap as u128 {
            return Err(Error::DegreeCapExceeded {
                degree: total,
                cap: degree_cap,
            });
        }
        Ok(())
    }

    /// `f^{*n}(l) = f(f(...f(l)))`, `n` repeated substitutions.
    pub fn star_eval(&self, point: &E, n: usize) -> E {
        let mut acc = point.clone();
        for _ in 0..n {
            acc = self.eval(&acc);
        }
        acc
    }

    /// Writes `f = q (x - l) + r`. Requires an associative coefficient algebra;
    /// then `r = f(l)`.
    pub fn right_divide_linear(&self, point: &E) -> Result<(Self, E)> {
        if !E::ASSOCIATIVE {
            return Err(Error::Unsupported("right division by x - l needs an associative algebra"));
        }
        let Some(m) = self.degree() else {
            return Ok((Self::zero(&self.spec), E::zero(&self.spec)));
        };
        if m == 0 {
            return Ok((Self::zero(&self.spec), self.coeffs[0].clone()));
        }
        // q_{m-1} = c_m, q_{i-1} = c_i + q_i l, r = c_0 + q_0 l
        let mut q = vec![E::zero(&self.spec); m];
        q[m - 1] = self.coeffs[m].clone();
        for i in (1..m).rev() {
            q[i - 1] = self.coeffs[i].plus(&q[i].times(point));
        }
        let r = self.coeffs[0].plus(&q[0].times(point));
        Ok((Self::new(&self.spec, q), r))
    }
}

impl<E: Element> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a, E: Element> Add<&'a Poly<E>> for &'a Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: &'a Poly<E>) -> Poly<E> {
        self.try_add(rhs).expect("Poly::add")
    }
}

impl<'a, E: Element> Sub<&'a Poly<E>> for &'a Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: &'a Poly<E>) -> Poly<E> {
        self.try_sub(rhs).expect("Poly::sub")
    }
}

impl<'a, E: Element> Mul<&'a Poly<E>> for &'a Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: &'a Poly<E>) -> Poly<E> {
        self.try_mul(rhs).expect("Poly::mul")
    }
}

impl<E: Element> Neg for &Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        self.map_coeffs(E::negated)
    }
}
