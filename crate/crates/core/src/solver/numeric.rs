//! Floating-point backend: simultaneous Aberth-Ehrlich root iteration for
//! real polynomials, cluster averaging for repeated roots, and a small `f64`
//! quaternion type for solving the reduced linear equation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// All complex roots of `sum coeffs[i] z^i` (real coefficients, nonzero leading).
pub(crate) fn aberth(coeffs: &[f64], max_iterations: usize) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let p: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c / lead, 0.0)).collect();
    let dp: Vec<Complex64> = (1..=n).map(|i| p[i] * i as f64).collect();

    // initial guesses on a circle of the geometric-mean radius, off-axis
    let radius = {
        let a0 = p[0].norm();
        if a0 > 0.0 {
            a0.powf(1.0 / n as f64)
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..max_iterations {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, dv) = (horner(&p, z[k]), horner(&dp, z[k]));
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step <= 4.0 * f64::EPSILON {
            return Ok(z);
        }
    }
    // multiple roots converge linearly; accept a near-stationary state
    let worst = z
        .iter()
        .map(|&zk| horner(&p, zk).norm() / (1.0 + zk.norm()).powi(n as i32))
        .fold(0.0, f64::max);
    if worst < 1e-10 {
        Ok(z)
    } else {
        Err(Error::NonConvergence(max_iterations))
    }
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// A group of approximate roots treated as one repeated root.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cluster {
    pub center: Complex64,
}

/// Groups nearby roots, replaces each group by its mean, and polishes the mean
/// with Newton steps on the `(m-1)`-th derivative.
pub(crate) fn cluster_roots(coeffs: &[f64], roots: &[Complex64], radius: f64) -> Vec<Cluster> {
    let mut assigned = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        // single linkage
        let mut cursor = 0;
        while cursor < members.len() {
            let zi = roots[members[cursor]];
            for j in 0..roots.len() {
                if !assigned[j] && (roots[j] - zi).norm() <= radius * (1.0 + zi.norm()) {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            cursor += 1;
        }
        let m = members.len();
        let mean = members.iter().map(|&k| roots[k]).sum::<Complex64>() / m as f64;
        out.push(Cluster {
            center: polish(coeffs, mean, m),
        });
    }
    out
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

fn polish(coeffs: &[f64], start: Complex64, multiplicity: usize) -> Complex64 {
    let mut q = coeffs.to_vec();
    for _ in 1..multiplicity {
        q = derivative(&q);
    }
    let dq = derivative(&q);
    let qc: Vec<Complex64> = q.iter().map(|&c| c.into()).collect();
    let dqc: Vec<Complex64> = dq.iter().map(|&c| c.into()).collect();
    let mut z = start;
    for _ in 0..4 {
        let d = horner(&dqc, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = horner(&qc, z) / d;
        // Newton on a derivative can jump to a different root; stay local
        if !step.re.is_finite() || step.norm() > 1e-6 * (1.0 + z.norm()) {
            break;
        }
        z -= step;
    }
    z
}

/// `a + b i + c j + e k` over `f64`, with the structure constants alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct FQuat {
    pub c: [f64; 4],
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FAlgebra {
    pub alpha: f64,
    pub beta: f64,
}

impl FAlgebra {
    pub fn mul(&self, x: &FQuat, y: &FQuat) -> FQuat {
        let (al, be) = (self.alpha, self.beta);
        let [a1, b1, c1, e1] = x.c;
        let [a2, b2, c2, e2] = y.c;
        FQuat {
            c: [
                a1 * a2 + al * b1 * b2 + be * c1 * c2 - al * be * e1 * e2,
                a1 * b2 + b1 * a2 + be * (e1 * c2 - c1 * e2),
                a1 * c2 + c1 * a2 + al * (b1 * e2 - e1 * b2),
                a1 * e2 + e1 * a2 + b1 * c2 - c1 * b2,
            ],
        }
    }

    pub fn norm(&self, x: &FQuat) -> f64 {
        let [a, b, c, e] = x.c;
        a * a - self.alpha * b * b - self.beta * c * c + self.alpha * self.beta * e * e
    }

    pub fn inv(&self, x: &FQuat) -> Option<FQuat> {
        let n = self.norm(x);
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let [a, b, c, e] = x.c;
        Some(FQuat {
            c: [a / n, -b / n, -c / n, -e / n],
        })
    }
}

impl FQuat {
    pub fn zero() -> Self {
        FQuat { c: [0.0; 4] }
    }

    pub fn add_scaled(&self, other: &FQuat, s: f64) -> FQuat {
        let mut c = self.c;
        for (ci, oi) in c.iter_mut().zip(other.c) {
            *ci += s * oi;
        }
        FQuat { c }
    }

    pub fn neg(&self) -> FQuat {
        FQuat {
            c: self.c.map(|v| -v),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn roots_of_quartic() {
        // x^4 + 3x^2 + 2: roots +-i, +-sqrt(2) i
        let r = sorted(aberth(&[2.0, 0.0, 3.0, 0.0, 1.0], 500).unwrap());
        let s2 = 2f64.sqrt();
        let mut im: Vec<f64> = r.iter().map(|z| z.im).collect();
        im.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in im.iter().zip([-s2, -1.0, 1.0, s2]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        assert!(r.iter().all(|z| z.re.abs() < 1e-13));
    }

    #[test]
    fn repeated_roots_cluster() {
        // (x^2 + 1)^2 = x^4 + 2x^2 + 1
        let c = [1.0, 0.0, 2.0, 0.0, 1.0];
        let r = aberth(&c, 2000).unwrap();
        let cl = cluster_roots(&c, &r, 1e-5);
        assert_eq!(cl.len(), 2);
        for k in cl {
            assert!((k.center.im.abs() - 1.0).abs() < 1e-12);
            assert!(k.center.re.abs() < 1e-12);
        }
    }

    #[test]
    fn real_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let r = sorted(aberth(&[6.0, -7.0, 0.0, 1.0], 500).unwrap());
        for (z, want) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((z.re - want).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn float_quaternion_inverse() {
        let h = FAlgebra {
            alpha: -1.0,
            beta: -1.0,
        };
        let x = FQuat {
            c: [1.0, 2.0, -1.0, 0.5],
        };
        let p = h.mul(&x, &h.inv(&x).unwrap());
        assert!((p.c[0] - 1.0).abs() < 1e-15 && p.c[1..].iter().all(|v| v.abs() < 1e-15));
    }
}
