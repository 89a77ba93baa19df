//! Shared generators, an independent Hamilton-quaternion oracle, and the law
//! checks reused by the property and acceptance targets.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qdyn::dynamics;
use qdyn::solver::{ClassSolution, SolveOptions};
use qdyn::{Element, FieldSpec, OctSpec, Octonion, Poly, QuatSpec, Quaternion, Scalar};

pub type R = BigRational;
pub type LawResult = Result<(), TestCaseError>;

pub fn hq() -> Arc<QuatSpec> {
    QuatSpec::hamilton(FieldSpec::Rationals)
}

pub fn q5() -> FieldSpec {
    FieldSpec::quadratic(5).unwrap()
}

pub fn h5() -> Arc<QuatSpec> {
    QuatSpec::hamilton(q5())
}

pub fn oq() -> Arc<OctSpec> {
    OctSpec::classical(FieldSpec::Rationals)
}

pub fn rat(n: i64, d: i64) -> R {
    R::new(n.into(), d.into())
}

// ---- generators ----------------------------------------------------------

pub fn small_rat() -> impl Strategy<Value = R> + Clone {
    (-6i64..=6, prop_oneof![3 => Just(1i64), 1 => 2i64..=4]).prop_map(|(n, d)| rat(n, d))
}

pub fn small_int() -> impl Strategy<Value = R> + Clone {
    (-3i64..=3).prop_map(|n| rat(n, 1))
}

pub fn scalar_q() -> impl Strategy<Value = Scalar> + Clone {
    small_rat().prop_map(|a| Scalar::rational(FieldSpec::Rationals, a))
}

pub fn scalar_s5() -> impl Strategy<Value = Scalar> + Clone {
    (small_rat(), small_rat()).prop_map(|(a, b)| Scalar::new(q5(), a, b).unwrap())
}

fn quat_from(spec: Arc<QuatSpec>, coords: impl Strategy<Value = Scalar> + Clone) -> impl Strategy<Value = Quaternion> {
    [coords.clone(), coords.clone(), coords.clone(), coords]
        .prop_map(move |[a, b, c, e]| Quaternion::new(&spec, a, b, c, e).unwrap())
}

pub fn quat_q() -> impl Strategy<Value = Quaternion> {
    quat_from(hq(), scalar_q())
}

pub fn quat_s5() -> impl Strategy<Value = Quaternion> {
    quat_from(h5(), scalar_s5())
}

/// Quaternions with coordinates in -3..=3.
pub fn quat_int() -> impl Strategy<Value = Quaternion> {
    quat_from(hq(), small_int().prop_map(|a| Scalar::rational(FieldSpec::Rationals, a)))
}

pub fn oct_q() -> impl Strategy<Value = Octonion> {
    (quat_q(), quat_q()).prop_map(|(q, r)| Octonion::new(&oq(), q, r).unwrap())
}

pub fn qpoly(coeff: impl Strategy<Value = Quaternion>, min_deg: usize, max_deg: usize) -> impl Strategy<Value = Poly<Quaternion>> {
    prop::collection::vec(coeff, min_deg + 1..=max_deg + 1).prop_filter_map("degree", move |mut c| {
        if c.last().is_some_and(|l| l.is_zero()) {
            *c.last_mut().unwrap() = Quaternion::one(&hq());
        }
        let p = Poly::new(&hq(), c);
        (p.degree().unwrap_or(0) >= min_deg).then_some(p)
    })
}

pub fn opoly(max_deg: usize) -> impl Strategy<Value = Poly<Octonion>> {
    prop::collection::vec(oct_q(), 1..=max_deg + 1).prop_map(|c| Poly::new(&oq(), c))
}

/// An element `a + b l` of the commutative subfield `F(l)`.
pub fn in_subfield(l: &Quaternion, a: &R, b: &R) -> Quaternion {
    let f = FieldSpec::Rationals;
    Quaternion::from_scalar(&hq(), Scalar::rational(f, a.clone())).plus(&l.scale(&Scalar::rational(f, b.clone())))
}

/// Deterministic runner so every run of the suites draws the same cases.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

// ---- independent oracle: Hamilton quaternions by basis table -------------

pub type OQuat = [R; 4];

/// `e_a * e_b = sign * e_index` for the basis 1, i, j, k.
const TABLE: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
];

pub fn to_oracle(q: &Quaternion) -> OQuat {
    let c = q.coordinates();
    std::array::from_fn(|i| c[i].as_rational().expect("rational coordinates").clone())
}

pub fn from_oracle(o: &OQuat) -> Quaternion {
    let f = FieldSpec::Rationals;
    let s = |i: usize| Scalar::rational(f, o[i].clone());
    Quaternion::new(&hq(), s(0), s(1), s(2), s(3)).unwrap()
}

pub fn o_zero() -> OQuat {
    std::array::from_fn(|_| R::zero())
}

pub fn o_add(a: &OQuat, b: &OQuat) -> OQuat {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn o_mul(a: &OQuat, b: &OQuat) -> OQuat {
    let mut out = o_zero();
    for (x, ax) in a.iter().enumerate() {
        for (y, by) in b.iter().enumerate() {
            let (sign, idx) = TABLE[x][y];
            let term = ax * by;
            if sign > 0 {
                out[idx] += term;
            } else {
                out[idx] -= term;
            }
        }
    }
    out
}

pub fn o_norm(a: &OQuat) -> R {
    a.iter().map(|v| v * v).fold(R::zero(), |s, v| s + v)
}

/// Left evaluation by Horner's rule with right multiplication.
pub fn o_eval(coeffs: &[OQuat], l: &OQuat) -> OQuat {
    coeffs
        .iter()
        .rev()
        .fold(o_zero(), |acc, c| o_add(&o_mul(&acc, l), c))
}

pub fn o_poly_mul(f: &[OQuat], g: &[OQuat]) -> Vec<OQuat> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![o_zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = o_add(&out[i + j], &o_mul(a, b));
        }
    }
    out
}

pub fn o_conj(a: &OQuat) -> OQuat {
    [a[0].clone(), -&a[1], -&a[2], -&a[3]]
}

pub fn o_coeffs(p: &Poly<Quaternion>) -> Vec<OQuat> {
    p.coeffs().iter().map(to_oracle).collect()
}

/// Companion coefficients by direct convolution of conjugated coefficients.
pub fn o_companion(p: &Poly<Quaternion>) -> Vec<R> {
    let c = o_coeffs(p);
    let cc: Vec<OQuat> = c.iter().map(o_conj).collect();
    o_poly_mul(&cc, &c)
        .into_iter()
        .map(|q| {
            assert!(q[1..].iter().all(Zero::is_zero), "companion coefficient not central");
            q[0].clone()
        })
        .collect()
}

// ---- octonions over the oracle quaternions, gamma = -1 -------------------

pub type OOct = [R; 8];

fn halves(a: &OOct) -> (OQuat, OQuat) {
    (std::array::from_fn(|i| a[i].clone()), std::array::from_fn(|i| a[i + 4].clone()))
}

/// (q + r l)(s + t l) = (qs - t* r) + (tq + r s*) l
pub fn o8_mul(a: &OOct, b: &OOct) -> OOct {
    let (q, r) = halves(a);
    let (s, t) = halves(b);
    let lo = o_add(&o_mul(&q, &s), &o_mul(&o_conj(&t), &r).map(|v| -v));
    let hi = o_add(&o_mul(&t, &q), &o_mul(&r, &o_conj(&s)));
    std::array::from_fn(|i| if i < 4 { lo[i].clone() } else { hi[i - 4].clone() })
}

pub fn o8_to_oracle(x: &Octonion) -> OOct {
    let c = x.coords();
    std::array::from_fn(|i| c[i].as_rational().expect("rational coordinates").clone())
}

fn o8_poly_mul(f: &[OOct], g: &[OOct]) -> Vec<OOct> {
    let mut out = vec![std::array::from_fn(|_| R::zero()); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            let p = o8_mul(a, b);
            for (o, v) in out[i + j].iter_mut().zip(p) {
                *o += v;
            }
        }
    }
    out
}

/// Coefficients of sum_i c_i * g^i with g^i built as g * g^(i-1).
pub fn o8_compose(f: &[OOct], g: &[OOct]) -> Vec<OOct> {
    let mut power: Vec<OOct> = vec![std::array::from_fn(|i| if i == 0 { R::one() } else { R::zero() })];
    let mut out: Vec<OOct> = Vec::new();
    for c in f {
        let term = o8_poly_mul(std::slice::from_ref(c), &power);
        if out.len() < term.len() {
            out.resize(term.len(), std::array::from_fn(|_| R::zero()));
        }
        for (o, t) in out.iter_mut().zip(term) {
            for (a, b) in o.iter_mut().zip(t) {
                *a += b;
            }
        }
        power = o8_poly_mul(g, &power);
    }
    while out.last().is_some_and(|c| c.iter().all(Zero::is_zero)) {
        out.pop();
    }
    out
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn one() -> R {
    R::one()
}

// ---- laws ---------------------------------------------------------------

pub fn law_norm_multiplicative<E: Element>(z: &E, w: &E) -> LawResult {
    prop_assert_eq!(z.times(w).norm(), z.norm() * w.norm());
    Ok(())
}

/// `z^2 - Tr(z) z + N(z) = 0`.
pub fn law_characteristic<E: Element>(z: &E) -> LawResult {
    let spec = z.spec();
    let lhs = z
        .times(z)
        .minus(&z.scale(&z.trace()))
        .plus(&E::from_scalar(spec, z.norm()));
    prop_assert!(lhs.is_zero(), "{} gives {}", z, lhs);
    Ok(())
}

pub fn law_conj_anti<E: Element>(z: &E, w: &E) -> LawResult {
    prop_assert_eq!(z.times(w).conj(), w.conj().times(&z.conj()));
    prop_assert_eq!(z.conj().conj(), z.clone());
    Ok(())
}

pub fn law_alternative_flexible(x: &Octonion, y: &Octonion) -> LawResult {
    prop_assert_eq!(x.times(x).times(y), x.times(&x.times(y)), "left alternative");
    prop_assert_eq!(y.times(x).times(x), y.times(&x.times(x)), "right alternative");
    prop_assert_eq!(x.times(y).times(x), x.times(&y.times(x)), "flexible");
    Ok(())
}

/// `f = q (x - l) + r` with `r = f(l)`.
pub fn law_factor_remainder(f: &Poly<Quaternion>, l: &Quaternion) -> LawResult {
    let (q, r) = f.right_divide_linear(l).unwrap();
    prop_assert_eq!(&r, &f.eval(l));
    let lin = Poly::new(&hq(), vec![l.negated(), Quaternion::one(&hq())]);
    prop_assert_eq!(&(&(&q * &lin) + &Poly::constant(r.clone())), f);
    // and a constructed root leaves no remainder
    let g = &q * &lin;
    prop_assert!(g.right_divide_linear(l).unwrap().1.is_zero());
    prop_assert!(g.eval(l).is_zero());
    Ok(())
}

/// With `g`'s coefficients in `F(l)`, `g(l)` commutes with `l`, so
/// `(f g)(l) = f(l) g(l)`; likewise `h^t(l) = h(l)^t` for `h` over `F(l)`.
pub fn law_lemma_and_product(
    f: &Poly<Quaternion>,
    l: &Quaternion,
    g_parts: &[(R, R)],
    t: usize,
) -> LawResult {
    let g = Poly::new(&hq(), g_parts.iter().map(|(a, b)| in_subfield(l, a, b)).collect());
    let gl = g.eval(l);
    prop_assert!(gl.commutes(l));
    prop_assert_eq!((f * &g).eval(l), f.eval(l).times(&gl));
    prop_assert_eq!(g.pow(t).eval(l), gl.pow(t));
    Ok(())
}

/// When `l` commutes with `f*t(l)` for `1 <= t < n`, `f∘n(l) = f*n(l)`.
pub fn law_compose_eval(f: &Poly<Quaternion>, l: &Quaternion) -> LawResult {
    let orbit = dynamics::orbit(f, l, 4, dynamics::Semantics::Eval, 4096).unwrap();
    let mut composite = f.clone();
    for n in 1..=4 {
        if n > 1 {
            composite = f.compose(&composite);
        }
        let hypothesis = orbit.commutes_with_start[..n - 1].iter().all(|&b| b);
        if !hypothesis {
            break;
        }
        prop_assert_eq!(composite.eval(l), orbit.points[n - 1].clone(), "n = {}", n);
    }
    Ok(())
}

/// Fixed points occupy at most `deg f` classes, and every point is fixed.
pub fn law_class_count(f: &Poly<Quaternion>) -> LawResult {
    let set = dynamics::fixed_points(f, &SolveOptions::default()).unwrap();
    let m = f.degree().unwrap();
    prop_assert!(set.root_class_count() <= m, "{} classes for degree {}", set.root_class_count(), m);
    for s in &set.solutions {
        prop_assert!(!s.is_anomaly(), "{:?}", s);
        if let ClassSolution::Point { point, .. } = s {
            prop_assert_eq!(&f.eval(point), point);
        }
    }
    Ok(())
}

/// Every point returned for `g` is an exact root, and nothing is anomalous.
pub fn law_solver_sound(g: &Poly<Quaternion>) -> LawResult {
    let set = qdyn::solver::roots(g, &SolveOptions::default()).unwrap();
    for s in &set.solutions {
        prop_assert!(!s.is_anomaly(), "{} gave {:?}", g, s);
        if let ClassSolution::Point { point, residual, .. } = s {
            prop_assert!(residual.is_none());
            prop_assert!(g.eval(point).is_zero(), "{} at {}", g, point);
        }
    }
    Ok(())
}
