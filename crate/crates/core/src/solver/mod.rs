//! Roots of quaternion left polynomials by the companion-polynomial method.
//!
//! For `g = sum c_i x^i`, the companion `C_g = conj(g) * g` has coefficients in
//! the center `F`. Its irreducible quadratic factors `x^2 - T x + N` (and its
//! linear factors, for central roots) name the conjugacy classes that contain
//! roots of `g`. Inside one class every element satisfies `l^2 = T l - N`, so
//! `g(l)` collapses to `A l + B` with `A, B` in the algebra; solving that
//! linear equation gives the single root of the class, or the whole class when
//! `A = B = 0`.

mod factor;
mod numeric;

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quat::{QuatSpec, Quaternion};
use crate::scalars::{ratio_to_f64, FieldSpec, Scalar};

use numeric::{FAlgebra, FQuat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub mode: Mode,
    /// Bits used when embedding exact coefficients into floating point.
    pub precision: u32,
    /// Relative acceptance tolerance for numeric points.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: Mode::Exact,
            precision: 64,
            tolerance: 1e-9,
            max_iterations: 2000,
        }
    }
}

impl SolveOptions {
    pub fn numeric() -> Self {
        SolveOptions {
            mode: Mode::Numeric,
            ..Self::default()
        }
    }
}

/// A polynomial with all coefficients in the ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl CentralPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedSpec("fields"));
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(CentralPoly { field, coeffs })
    }

    /// Coerces a quaternion polynomial whose coefficients are all central.
    pub fn from_poly(p: &Poly<Quaternion>) -> Result<Self> {
        let coeffs = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.as_scalar().ok_or_else(|| {
                    Error::Internal(format!("coefficient of x^{i} is not central: {c}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(Quaternion::field_of(p.spec()), coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn to_f64_coeffs(&self, bits: u32) -> Result<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|c| c.to_real(bits).map(|r| ratio_to_f64(&r)))
            .collect()
    }
}

impl fmt::Display for CentralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let compound = !c.rational_part().is_zero() && !c.radical_part().is_zero();
            let negative = !compound && (c.rational_part().is_negative() || c.radical_part().is_negative());
            let abs = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let body = if compound { format!("({abs})") } else { abs.to_string() };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A conjugacy class, named by the trace and norm of its elements.
#[derive(Clone, Debug, PartialEq)]
pub enum ConjClass {
    Exact { trace: Scalar, norm: Scalar },
    Numeric { trace: f64, norm: f64, tolerance: f64 },
}

impl ConjClass {
    pub fn exact(trace: Scalar, norm: Scalar) -> Self {
        ConjClass::Exact { trace, norm }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ConjClass::Exact { .. })
    }

    /// `T^2 = 4N`: the class of a central element.
    pub fn is_central(&self) -> bool {
        match self {
            ConjClass::Exact { trace, norm } => {
                let four = Scalar::from_int(trace.field(), 4);
                (trace * trace) == (&four * norm)
            }
            ConjClass::Numeric {
                trace,
                norm,
                tolerance,
            } => (trace * trace - 4.0 * norm).abs() <= tolerance.sqrt() * (1.0 + norm.abs()),
        }
    }

    /// `(T, N)` under the real embedding; used for deterministic ordering.
    pub fn approx(&self) -> (f64, f64) {
        match self {
            ConjClass::Exact { trace, norm } => (
                trace.to_f64().unwrap_or(f64::NAN),
                norm.to_f64().unwrap_or(f64::NAN),
            ),
            ConjClass::Numeric { trace, norm, .. } => (*trace, *norm),
        }
    }

    /// Membership by trace and norm; approximate for numeric classes.
    pub fn contains(&self, q: &Quaternion) -> bool {
        match self {
            ConjClass::Exact { trace, norm } => q.in_class(trace, norm),
            ConjClass::Numeric {
                trace,
                norm,
                tolerance,
            } => match (q.trace().to_f64(), q.norm().to_f64()) {
                (Ok(t), Ok(n)) => {
                    (t - trace).abs() <= tolerance * (1.0 + trace.abs())
                        && (n - norm).abs() <= tolerance * (1.0 + norm.abs())
                }
                _ => false,
            },
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let (a, b) = (self.approx(), other.approx());
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjClass::Exact { trace, norm } => write!(f, "(T = {trace}, N = {norm})"),
            ConjClass::Numeric { trace, norm, .. } => write!(f, "(T ~ {trace}, N ~ {norm})"),
        }
    }
}

/// Outcome of solving `g = 0` inside one conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassSolution {
    /// The unique root in the class. `residual` is set for numeric points,
    /// which are rounded to rational coordinates and re-evaluated exactly.
    Point {
        class: ConjClass,
        point: Quaternion,
        residual: Option<f64>,
    },
    /// Every element of the class is a root.
    Sphere { class: ConjClass },
    NoRoot { class: ConjClass },
    /// Verification failed; never silently dropped.
    Anomaly { class: ConjClass, report: String },
}

impl ClassSolution {
    pub fn class(&self) -> &ConjClass {
        match self {
            ClassSolution::Point { class, .. }
            | ClassSolution::Sphere { class }
            | ClassSolution::NoRoot { class }
            | ClassSolution::Anomaly { class, .. } => class,
        }
    }

    pub fn point(&self) -> Option<&Quaternion> {
        match self {
            ClassSolution::Point { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn variant(&self) -> &'static str {
        match self {
            ClassSolution::Point { .. } => "point",
            ClassSolution::Sphere { .. } => "sphere",
            ClassSolution::NoRoot { .. } => "none",
            ClassSolution::Anomaly { .. } => "anomaly",
        }
    }

    pub fn is_anomaly(&self) -> bool {
        matches!(self, ClassSolution::Anomaly { .. })
    }
}

/// Coefficientwise canonical involution: `sum conj(c_i) x^i`.
pub fn conj_poly(g: &Poly<Quaternion>) -> Poly<Quaternion> {
    g.map_coeffs(Quaternion::conj)
}

/// `C_g = conj(g) * g`.
pub fn companion(g: &Poly<Quaternion>) -> Result<CentralPoly> {
    if g.is_zero() {
        return Err(Error::Precondition("companion of the zero polynomial".into()));
    }
    let c = CentralPoly::from_poly(&(&conj_poly(g) * g))?;
    debug_assert_eq!(c.degree(), g.degree().map(|d| 2 * d));
    Ok(c)
}

/// Classes read off the companion polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub classes: Vec<ConjClass>,
    /// Part of the companion with no linear or quadratic factor over `Q`;
    /// it names no class of the algebra over `Q`. `None` when fully factored.
    pub residual: Option<CentralPoly>,
    /// False when the exact factor search was cut off and the remainder was
    /// handed to the numeric backend.
    pub complete: bool,
}

pub fn extract_classes(c: &CentralPoly, opts: &SolveOptions) -> Result<Extraction> {
    match opts.mode {
        Mode::Exact => extract_exact(c, opts),
        Mode::Numeric => Ok(Extraction {
            classes: extract_numeric(c, opts)?,
            residual: None,
            complete: true,
        }),
    }
}

fn extract_exact(c: &CentralPoly, opts: &SolveOptions) -> Result<Extraction> {
    if c.field() != FieldSpec::Rationals {
        return Err(Error::Unsupported(
            "exact class extraction needs F = Q; use numeric mode",
        ));
    }
    let field = c.field();
    let rationals: Vec<BigRational> = c
        .coeffs()
        .iter()
        .map(|s| s.rational_part().clone())
        .collect();
    let found = factor::factor_low_degree(&rationals);
    let mut classes = Vec::new();
    let two = BigRational::from_integer(2.into());
    for mu in &found.roots {
        let class = ConjClass::exact(
            Scalar::rational(field, &two * mu),
            Scalar::rational(field, mu * mu),
        );
        push_unique(&mut classes, class);
    }
    for (t, n) in &found.quadratics {
        push_unique(
            &mut classes,
            ConjClass::exact(Scalar::rational(field, t.clone()), Scalar::rational(field, n.clone())),
        );
    }
    let residual = if found.residual.len() > 1 {
        let coeffs = found
            .residual
            .iter()
            .map(|v| Scalar::rational(field, BigRational::from_integer(v.clone())))
            .collect();
        Some(CentralPoly::new(field, coeffs)?)
    } else {
        None
    };
    if !found.complete {
        if let Some(rest) = &residual {
            for class in extract_numeric(rest, opts)? {
                push_unique(&mut classes, class);
            }
        }
    }
    classes.sort_by(ConjClass::cmp_key);
    Ok(Extraction {
        classes,
        residual,
        complete: found.complete,
    })
}

fn push_unique(classes: &mut Vec<ConjClass>, class: ConjClass) {
    let dup = classes.iter().any(|c| match (c, &class) {
        (
            ConjClass::Numeric { trace: t1, norm: n1, tolerance },
            ConjClass::Numeric { trace: t2, norm: n2, .. },
        ) => {
            let tol = tolerance.sqrt();
            (t1 - t2).abs() <= tol * (1.0 + t1.abs()) && (n1 - n2).abs() <= tol * (1.0 + n1.abs())
        }
        (a, b) => a == b,
    });
    if !dup {
        classes.push(class);
    }
}

fn extract_numeric(c: &CentralPoly, opts: &SolveOptions) -> Result<Vec<ConjClass>> {
    if !c.field().has_real_embedding() {
        return Err(Error::NoRealEmbedding(c.field().radicand().unwrap_or(0)));
    }
    let coeffs = c.to_f64_coeffs(opts.precision)?;
    let roots = numeric::aberth(&coeffs, opts.max_iterations)?;
    let clusters = numeric::cluster_roots(&coeffs, &roots, 1e-5);
    let mut classes = Vec::new();
    for cl in clusters {
        let mut z = cl.center;
        // float noise around an exactly zero trace
        if z.re.abs() <= 64.0 * f64::EPSILON * (1.0 + z.norm()) {
            z.re = 0.0;
        }
        let cut = 1e-7 * (1.0 + z.norm());
        let class = if z.im > cut {
            ConjClass::Numeric {
                trace: 2.0 * z.re,
                norm: z.norm_sqr(),
                tolerance: opts.tolerance,
            }
        } else if z.im.abs() <= cut {
            ConjClass::Numeric {
                trace: 2.0 * z.re,
                norm: z.re * z.re,
                tolerance: opts.tolerance,
            }
        } else {
            continue;
        };
        push_unique(&mut classes, class);
    }
    classes.sort_by(ConjClass::cmp_key);
    Ok(classes)
}

/// Central sequences with `l^k = p_k l + q_k` for every `l` with
/// `l^2 = T l - N`.
fn reduction_sequences<S: Clone>(
    len: usize,
    zero: S,
    one: S,
    step: impl Fn(&S, &S) -> (S, S),
) -> Vec<(S, S)> {
    let mut out = Vec::with_capacity(len);
    let (mut p, mut q) = (zero, one);
    for _ in 0..len {
        out.push((p.clone(), q.clone()));
        (p, q) = step(&p, &q);
    }
    out
}

pub fn solve_in_class(g: &Poly<Quaternion>, class: &ConjClass, opts: &SolveOptions) -> Result<ClassSolution> {
    match class {
        ConjClass::Exact { trace, norm } => solve_exact(g, class, trace, norm),
        ConjClass::Numeric { trace, norm, .. } => solve_numeric(g, class, *trace, *norm, opts),
    }
}

/// In a definite algebra (`alpha, beta < 0` under the real embedding) only
/// central elements have a minimal polynomial with real roots, so a
/// non-central class with `T^2 > 4N` has no elements at all.
fn empty_in_definite_algebra(spec: &QuatSpec, t: &Scalar, n: &Scalar) -> bool {
    let negative = |s: &Scalar| s.real_sign().is_ok_and(|o| o == Ordering::Less);
    let four = Scalar::from_int(t.field(), 4);
    negative(spec.alpha())
        && negative(spec.beta())
        && (t * t - &four * n).real_sign().is_ok_and(|o| o == Ordering::Greater)
}

fn solve_exact(g: &Poly<Quaternion>, class: &ConjClass, t: &Scalar, n: &Scalar) -> Result<ClassSolution> {
    let spec = g.spec();
    let field = Quaternion::field_of(spec);
    let class = class.clone();
    if empty_in_definite_algebra(spec, t, n) {
        return Ok(ClassSolution::NoRoot { class });
    }
    if class.is_central() {
        let mu = Quaternion::from_scalar(spec, t * &Scalar::from_frac(field, 1, 2));
        return Ok(if g.eval(&mu).is_zero() {
            ClassSolution::Point {
                class,
                point: mu,
                residual: None,
            }
        } else {
            ClassSolution::NoRoot { class }
        });
    }
    let seq = reduction_sequences(
        g.coeffs().len(),
        Scalar::zero(field),
        Scalar::one(field),
        |p, q| (t * p + q, -(n * p)),
    );
    let mut a = Quaternion::zero(spec);
    let mut b = Quaternion::zero(spec);
    for (c, (p, q)) in g.coeffs().iter().zip(&seq) {
        a = a.plus(&c.scale(p));
        b = b.plus(&c.scale(q));
    }
    if a.is_zero() {
        return Ok(if b.is_zero() {
            ClassSolution::Sphere { class }
        } else {
            ClassSolution::NoRoot { class }
        });
    }
    let a_inv = match a.inv() {
        Ok(v) => v,
        Err(e) => {
            return Ok(ClassSolution::Anomaly {
                class,
                report: format!("cannot solve A l + B = 0: {e}"),
            })
        }
    };
    let point = a_inv.times(&b).negated();
    if !point.in_class(t, n) {
        return Ok(ClassSolution::Anomaly {
            report: format!("candidate {point} is not in class {class}"),
            class,
        });
    }
    if !g.eval(&point).is_zero() {
        return Ok(ClassSolution::Anomaly {
            report: format!("candidate {point} does not annihilate g"),
            class,
        });
    }
    Ok(ClassSolution::Point {
        class,
        point,
        residual: None,
    })
}

fn coeff_to_f64(c: &Quaternion) -> Result<FQuat> {
    let mut out = [0.0; 4];
    for (o, s) in out.iter_mut().zip(c.coordinates()) {
        *o = s.to_f64()?;
    }
    Ok(FQuat { c: out })
}

/// Max absolute coordinate of `g(point)`, evaluated exactly.
fn exact_residual(g: &Poly<Quaternion>, point: &Quaternion) -> Result<f64> {
    Ok(coeff_to_f64(&g.eval(point))?.max_abs())
}

fn round_to_field(spec: &Quaternion, v: &FQuat) -> Result<Quaternion> {
    let field = Quaternion::field_of(spec.spec());
    let coord = |x: f64| {
        BigRational::from_float(x)
            .map(|r| Scalar::rational(field, r))
            .ok_or_else(|| Error::Internal(format!("non-finite coordinate {x}")))
    };
    Quaternion::new(spec.spec(), coord(v.c[0])?, coord(v.c[1])?, coord(v.c[2])?, coord(v.c[3])?)
}

fn solve_numeric(
    g: &Poly<Quaternion>,
    class: &ConjClass,
    t: f64,
    n: f64,
    opts: &SolveOptions,
) -> Result<ClassSolution> {
    let spec = g.spec();
    let zero = Quaternion::zero(spec);
    let alg = FAlgebra {
        alpha: spec.alpha().to_f64()?,
        beta: spec.beta().to_f64()?,
    };
    let coeffs = g.coeffs().iter().map(coeff_to_f64).collect::<Result<Vec<_>>>()?;
    let scale = 1.0 + coeffs.iter().map(FQuat::max_abs).fold(0.0, f64::max);
    let accept = opts.tolerance * scale;
    let class = class.clone();

    let candidate = if class.is_central() {
        FQuat {
            c: [t / 2.0, 0.0, 0.0, 0.0],
        }
    } else {
        let seq = reduction_sequences(coeffs.len(), 0.0, 1.0, |p, q| (t * p + q, -n * p));
        let (mut a, mut b) = (FQuat::zero(), FQuat::zero());
        for (c, (p, q)) in coeffs.iter().zip(&seq) {
            a = a.add_scaled(c, *p);
            b = b.add_scaled(c, *q);
        }
        if a.max_abs() <= accept {
            return Ok(if b.max_abs() <= accept {
                ClassSolution::Sphere { class }
            } else {
                ClassSolution::NoRoot { class }
            });
        }
        match alg.inv(&a) {
            Some(a_inv) => alg.mul(&a_inv, &b).neg(),
            None => {
                return Ok(ClassSolution::Anomaly {
                    class,
                    report: "A has zero norm".into(),
                })
            }
        }
    };
    let big = candidate.max_abs();
    let cleaned = FQuat {
        c: candidate.c.map(|v| if v.abs() <= 64.0 * f64::EPSILON * big { 0.0 } else { v }),
    };
    let point = round_to_field(&zero, &cleaned)?;
    let residual = exact_residual(g, &point)?;
    if residual <= accept {
        Ok(ClassSolution::Point {
            class,
            point,
            residual: Some(residual),
        })
    } else if class.is_central() {
        Ok(ClassSolution::NoRoot { class })
    } else {
        Ok(ClassSolution::Anomaly {
            report: format!("residual {residual:e} exceeds tolerance {accept:e}"),
            class,
        })
    }
}

/// Full pipeline: companion, classes, one solve per class.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub companion: CentralPoly,
    pub extraction: Extraction,
    /// One entry per class, ordered by `(T, N)` under the real embedding.
    pub solutions: Vec<ClassSolution>,
}

impl RootSet {
    pub fn points(&self) -> impl Iterator<Item = &Quaternion> {
        self.solutions.iter().filter_map(ClassSolution::point)
    }

    /// Whether `q` is among the roots, as a point or on a sphere.
    pub fn contains(&self, q: &Quaternion) -> bool {
        self.solutions.iter().any(|s| match s {
            ClassSolution::Point { point, .. } => point == q,
            ClassSolution::Sphere { class } => class.contains(q),
            _ => false,
        })
    }

    /// Classes that contain at least one root.
    pub fn root_class_count(&self) -> usize {
        self.solutions
            .iter()
            .filter(|s| matches!(s, ClassSolution::Point { .. } | ClassSolution::Sphere { .. }))
            .count()
    }
}

pub fn roots(g: &Poly<Quaternion>, opts: &SolveOptions) -> Result<RootSet> {
    if g.degree().unwrap_or(0) < 1 {
        return Err(Error::Precondition("root finding needs degree >= 1".into()));
    }
    let companion = companion(g)?;
    let extraction = extract_classes(&companion, opts)?;
    let mut solutions = Vec::with_capacity(extraction.classes.len());
    for class in &extraction.classes {
        let empty = match class {
            ConjClass::Exact { trace, norm } => empty_in_definite_algebra(g.spec(), trace, norm),
            ConjClass::Numeric { .. } => false,
        };
        let sol = match solve_in_class(g, class, opts)? {
            // otherwise a companion factor always carries a root in a division algebra
            ClassSolution::NoRoot { class } if !empty => ClassSolution::Anomaly {
                report: "class read off the companion has no root (split algebra or lost precision)"
                    .into(),
                class,
            },
            other => other,
        };
        solutions.push(sol);
    }
    Ok(RootSet {
        companion,
        extraction,
        solutions,
    })
}
