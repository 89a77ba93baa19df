//! Bounded search for the linear and quadratic rational factors of a rational
//! polynomial: rational-root candidates from divisors of the end coefficients,
//! then Kronecker-style quadratic candidates `a x^2 + b x + c` with `a | lead`,
//! `c | p(0)` and `a + b + c | p(1)`, each confirmed by exact trial division.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, ascending coefficients.
pub(crate) type IntPoly = Vec<BigInt>;

const TRIAL_PRIMES_UP_TO: u64 = 50_000;
const MAX_DIVISORS: usize = 50_000;
const MAX_QUADRATIC_CANDIDATES: usize = 20_000_000;
const RHO_STEPS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LowDegreeFactors {
    /// Rational roots, repeated by multiplicity.
    pub roots: Vec<BigRational>,
    /// Irreducible monic factors `x^2 - t x + n`, as `(t, n)`, repeated by multiplicity.
    pub quadratics: Vec<(BigRational, BigRational)>,
    /// What is left after removing the factors above (primitive, ascending).
    pub residual: IntPoly,
    /// False when divisor enumeration was infeasible and `residual` may still
    /// contain linear or quadratic factors.
    pub complete: bool,
}

pub(crate) fn primitive_part(coeffs: &[BigRational]) -> IntPoly {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: IntPoly = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    trim(&mut ints);
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &IntPoly) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn eval(p: &IntPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `q^n p(num/q)`, zero iff `num/q` is a root.
fn eval_homogenized(p: &IntPoly, num: &BigInt, den: &BigInt) -> BigInt {
    let n = degree(p);
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        acc += c * &num_pow * den.pow((n - i) as u32);
        num_pow *= num;
    }
    acc
}

/// Exact division `p / d` over `Z`, `None` unless `d` divides `p` with integral quotient.
pub(crate) fn divide_exact(p: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let (dn, pn) = (degree(d), degree(p));
    if pn < dn {
        return None;
    }
    let lead = d.last()?;
    let mut rem = p.clone();
    let mut quot = vec![BigInt::zero(); pn - dn + 1];
    for k in (0..=pn - dn).rev() {
        let top = &rem[k + dn];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] -= &q * dc;
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(sieve)
}

fn sieve() -> Vec<u64> {
    let n = TRIAL_PRIMES_UP_TO as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let bases = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for b in bases {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for b in bases {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of composite `n`.
/// Deterministic: tries the maps `x -> x^2 + c` for `c = 1, 2, ...`.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: usize = 64;
    for c in 1u32..=8 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut r = 1usize;
        let mut steps = 0usize;
        while g.is_one() && steps < RHO_STEPS {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            steps += r;
            r *= 2;
        }
        if &g == n {
            // batch overshot: retrace one step at a time
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs; `None` if it
/// could not be completed.
fn factorize(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return None;
    }
    for &p in small_primes() {
        if n.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let s = m.sqrt();
        if &s * &s == m {
            stack.push(s.clone());
            stack.push(s);
            continue;
        }
        let d = pollard_rho(&m)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Some(out)
}

/// Positive divisors of `|n|`, `None` if factoring fails or there are too many.
pub(crate) fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let fac = factorize(n)?;
    let count = fac
        .iter()
        .try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1))?;
    if count > MAX_DIVISORS {
        return None;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

fn signed(divs: &[BigInt]) -> Vec<BigInt> {
    divs.iter().flat_map(|d| [d.clone(), -d]).collect()
}

fn find_quadratic(p: &IntPoly) -> Result<Option<IntPoly>, ()> {
    let lead = p.last().expect("nonzero");
    let v0 = &p[0];
    let v1 = eval(p, &BigInt::one());
    let vm1 = eval(p, &-BigInt::one());
    let v2 = eval(p, &BigInt::from(2));
    // +-1 and 0 were removed as rational roots, so these are nonzero
    let lead_divs = divisors(lead).ok_or(())?;
    let c_divs = signed(&divisors(v0).ok_or(())?);
    let e_divs = signed(&divisors(&v1).ok_or(())?);
    if lead_divs.len() * c_divs.len() * e_divs.len() > MAX_QUADRATIC_CANDIDATES {
        return Err(());
    }
    for a in &lead_divs {
        for c in &c_divs {
            for e in &e_divs {
                let b = e - a - c;
                let qm1 = a - &b + c;
                if qm1.is_zero() || !(&vm1 % &qm1).is_zero() {
                    continue;
                }
                let q2 = a * BigInt::from(4) + &b * BigInt::from(2) + c;
                if q2.is_zero() || !(&v2 % &q2).is_zero() {
                    continue;
                }
                if !a.gcd(&b).gcd(c).is_one() || is_square(&(&b * &b - a * c * 4)) {
                    continue;
                }
                let cand = vec![c.clone(), b.clone(), a.clone()];
                if divide_exact(p, &cand).is_some() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn factor_low_degree(coeffs: &[BigRational]) -> LowDegreeFactors {
    let mut p = primitive_part(coeffs);
    let mut roots = Vec::new();
    let mut quadratics = Vec::new();
    let mut complete = true;

    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        roots.push(BigRational::zero());
    }

    if degree(&p) >= 1 {
        match (divisors(&p[0]), divisors(p.last().unwrap())) {
            (Some(nums), Some(dens)) => {
                for num in signed(&nums) {
                    for den in &dens {
                        if !num.gcd(den).is_one() {
                            continue;
                        }
                        while degree(&p) >= 1 && eval_homogenized(&p, &num, den).is_zero() {
                            let lin = vec![-num.clone(), den.clone()];
                            p = divide_exact(&p, &lin).expect("root gives an integral factor");
                            roots.push(BigRational::new(num.clone(), den.clone()));
                        }
                    }
                }
            }
            _ => complete = false,
        }
    }

    while complete && degree(&p) >= 4 {
        match find_quadratic(&p) {
            Ok(Some(q)) => {
                while let Some(rest) = divide_exact(&p, &q) {
                    p = rest;
                    let a = BigRational::from_integer(q[2].clone());
                    quadratics.push((
                        -BigRational::from_integer(q[1].clone()) / &a,
                        BigRational::from_integer(q[0].clone()) / &a,
                    ));
                }
            }
            Ok(None) => break,
            Err(()) => complete = false,
        }
    }

    if complete && degree(&p) == 2 {
        let a = BigRational::from_integer(p[2].clone());
        quadratics.push((
            -BigRational::from_integer(p[1].clone()) / &a,
            BigRational::from_integer(p[0].clone()) / &a,
        ));
        p = vec![BigInt::one()];
    }
    if degree(&p) == 0 {
        p = vec![BigInt::one()];
    }

    LowDegreeFactors {
        roots,
        quadratics,
        residual: p,
        complete,
    }
}
