//! Orbits, fixed points and periodic points.
//!
//! Two iterations are in play: `f∘n(l)`, the n-fold composite polynomial
//! evaluated once, and `f*n(l)`, evaluation repeated n times. They differ in
//! general. `l` is r-periodic when `f∘(nr)(l) = l` for every `n >= 1`. That
//! cannot be checked by enumeration, so [`certify_periodic`] certifies only
//! through the commuting-orbit criterion: `f∘r(l) = l` and `l` commutes with
//! `f*t(l)` for `1 <= t < r`. Otherwise it searches for an exact
//! counterexample up to a bound.

use std::fmt;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::oct::Octonion;
use crate::poly::Poly;
use crate::quat::Quaternion;
use crate::solver::{self, ClassSolution, Mode, RootSet, SolveOptions};

pub const DEFAULT_N_MAX: usize = 4;

/// Fixed points of `f`, i.e. the roots of `f(x) - x`, grouped by class.
pub fn fixed_points(f: &Poly<Quaternion>, opts: &SolveOptions) -> Result<RootSet> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::Precondition("fixed points need deg f >= 1".into()));
    }
    let g = f - &Poly::x(f.spec());
    if g.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if g.degree() == Some(0) {
        // f = x + c with c != 0 moves every point
        return Ok(RootSet {
            companion: solver::companion(&g)?,
            extraction: solver::Extraction {
                classes: Vec::new(),
                residual: None,
                complete: true,
            },
            solutions: Vec::new(),
        });
    }
    let mut set = solver::roots(&g, opts)?;
    if opts.mode == Mode::Exact {
        for sol in &mut set.solutions {
            if let ClassSolution::Point { class, point, .. } = sol {
                if f.eval(point) != *point {
                    *sol = ClassSolution::Anomaly {
                        report: format!("root {point} of f - x is not fixed by f"),
                        class: class.clone(),
                    };
                }
            }
        }
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// `f∘n(l)`: compose first, evaluate once.
    Compose,
    /// `f*n(l)`: evaluate repeatedly.
    Eval,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Compose => "compose",
            Semantics::Eval => "eval",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport<E> {
    pub semantics: Semantics,
    /// `points[n]` is the `(n + 1)`-th iterate.
    pub points: Vec<E>,
    /// Whether `points[n]` commutes with the starting point.
    pub commutes_with_start: Vec<bool>,
}

/// Successive composites `f∘1, f∘2, ...` with the degree checked before each step.
struct Composites<'a, E: Element> {
    f: &'a Poly<E>,
    current: Option<Poly<E>>,
    n: usize,
    degree_cap: usize,
}

impl<'a, E: Element> Composites<'a, E> {
    fn new(f: &'a Poly<E>, degree_cap: usize) -> Self {
        Composites {
            f,
            current: None,
            n: 0,
            degree_cap,
        }
    }

    fn next(&mut self) -> Result<&Poly<E>> {
        self.f.check_iterate_degree(self.n + 1, self.degree_cap)?;
        let next = match &self.current {
            None => self.f.clone(),
            Some(prev) => self.f.compose(prev),
        };
        self.n += 1;
        Ok(self.current.insert(next))
    }
}

pub fn orbit<E: Element>(
    f: &Poly<E>,
    start: &E,
    n_max: usize,
    semantics: Semantics,
    degree_cap: usize,
) -> Result<OrbitReport<E>> {
    let mut points = Vec::with_capacity(n_max);
    match semantics {
        Semantics::Eval => {
            let mut cur = start.clone();
            for _ in 0..n_max {
                cur = f.eval(&cur);
                points.push(cur.clone());
            }
        }
        Semantics::Compose => {
            let mut it = Composites::new(f, degree_cap);
            for _ in 0..n_max {
                points.push(it.next()?.eval(start));
            }
        }
    }
    let commutes_with_start = points.iter().map(|p| p.commutes(start)).collect();
    Ok(OrbitReport {
        semantics,
        points,
        commutes_with_start,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicStatus {
    CertifiedPeriodic,
    FixedPoint,
    RefutedAt(usize),
    Inconclusive,
}

impl fmt::Display for PeriodicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicStatus::CertifiedPeriodic => write!(f, "certified-periodic"),
            PeriodicStatus::FixedPoint => write!(f, "fixed-point"),
            PeriodicStatus::RefutedAt(n) => write!(f, "refuted-at({n})"),
            PeriodicStatus::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evidence<E> {
    /// `f∘r(l) = l`.
    pub r_fixed: bool,
    pub r_image: E,
    /// Smallest `t < r` with `f*t(l)` not commuting with `l`.
    pub commutation_failure: Option<usize>,
    /// Multiples `n` for which `f∘(nr)(l)` was computed, in order.
    pub multiples_checked: Vec<usize>,
    /// `f∘(nr)(l)` at the refuting multiple.
    pub refuting_value: Option<E>,
    /// Multiple `n` whose composite would exceed the degree cap.
    pub degree_cap_hit: Option<usize>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicVerdict<E> {
    pub r: usize,
    pub status: PeriodicStatus,
    pub evidence: Evidence<E>,
}

pub fn certify_periodic<E: Element>(
    f: &Poly<E>,
    start: &E,
    r: usize,
    n_max: usize,
    degree_cap: usize,
) -> Result<PeriodicVerdict<E>> {
    if r == 0 {
        return Err(Error::Precondition("period r must be positive".into()));
    }
    let mut it = Composites::new(f, degree_cap);
    for _ in 1..r {
        it.next()?;
    }
    let r_image = it.next()?.eval(start);
    let r_fixed = r_image == *start;
    let mut evidence = Evidence {
        r_fixed,
        r_image,
        commutation_failure: None,
        multiples_checked: vec![1],
        refuting_value: None,
        degree_cap_hit: None,
        note: String::new(),
    };
    let verdict = |status, evidence| Ok(PeriodicVerdict { r, status, evidence });
    if !r_fixed {
        evidence.note = format!("not r-fixed: f∘{r} moves the point");
        return verdict(PeriodicStatus::Inconclusive, evidence);
    }
    if r == 1 {
        evidence.note = "fixed point; every iterate fixes it".into();
        return verdict(PeriodicStatus::FixedPoint, evidence);
    }

    let mut cur = start.clone();
    for t in 1..r {
        cur = f.eval(&cur);
        if !cur.commutes(start) {
            evidence.commutation_failure = Some(t);
            break;
        }
    }
    if evidence.commutation_failure.is_none() {
        evidence.note = format!("r-fixed and commutes with f*t for 1 <= t < {r}");
        return verdict(PeriodicStatus::CertifiedPeriodic, evidence);
    }

    for n in 2..=n_max {
        let mut image = None;
        for _ in 0..r {
            match it.next() {
                Ok(p) => image = Some(p.eval(start)),
                Err(Error::DegreeCapExceeded { degree, cap }) => {
                    evidence.degree_cap_hit = Some(n);
                    evidence.note =
                        format!("f∘{} would have degree {degree} > cap {cap}", n * r);
                    return verdict(PeriodicStatus::Inconclusive, evidence);
                }
                Err(e) => return Err(e),
            }
        }
        evidence.multiples_checked.push(n);
        let image = image.expect("r >= 1");
        if image != *start {
            evidence.note = format!("f∘{} moves the point", n * r);
            evidence.refuting_value = Some(image);
            return verdict(PeriodicStatus::RefutedAt(n), evidence);
        }
    }
    evidence.note = format!("no counterexample for n <= {n_max}");
    verdict(PeriodicStatus::Inconclusive, evidence)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OctCheckReport {
    /// `f(l) = l`.
    pub fixed: bool,
    /// `(n, f∘n(l))` for `n = 1..`, stopping at the first failure.
    pub values: Vec<(usize, Octonion)>,
    pub first_failure: Option<usize>,
}

/// Checks `f∘n(l) = l` for `n = 1..=n_max` over the octonions, where no
/// theorem guarantees it from `f(l) = l`.
pub fn octonion_fixed_check(
    f: &Poly<Octonion>,
    start: &Octonion,
    n_max: usize,
    degree_cap: usize,
) -> Result<OctCheckReport> {
    let mut it = Composites::new(f, degree_cap);
    let mut values = Vec::new();
    let mut first_failure = None;
    for n in 1..=n_max.max(1) {
        let v = it.next()?.eval(start);
        let ok = v == *start;
        values.push((n, v));
        if !ok {
            first_failure = Some(n);
            break;
        }
    }
    Ok(OctCheckReport {
        fixed: first_failure != Some(1),
        values,
        first_failure,
    })
}
