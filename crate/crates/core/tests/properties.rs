mod common;

use proptest::prelude::*;

use common::*;
use qdyn::dynamics::{self, Semantics};
use qdyn::parse::{parse_poly, parse_scalar};
use qdyn::solver::{self, SolveOptions};
use qdyn::{Element, FieldSpec, Octonion, Poly, Quaternion, Scalar};

fn nonzero<E: Element>(s: impl Strategy<Value = E>) -> impl Strategy<Value = E> {
    s.prop_filter("nonzero", |z| !z.is_zero())
}

fn linear(l: &Quaternion) -> Poly<Quaternion> {
    Poly::new(&hq(), vec![l.negated(), Quaternion::one(&hq())])
}

fn right_nested_pow(x: &Octonion, e: usize) -> Octonion {
    let mut acc = Octonion::one(x.spec());
    for _ in 0..e {
        acc = x.times(&acc);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scalar_field_axioms(a in scalar_s5(), b in scalar_s5(), c in scalar_s5()) {
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar_s5(), q in scalar_q()) {
        prop_assert_eq!(parse_scalar(&a.to_string(), q5()).unwrap(), a);
        prop_assert_eq!(parse_scalar(&q.to_string(), FieldSpec::Rationals).unwrap(), q);
    }

    #[test]
    fn real_embedding_respects_arithmetic(a in scalar_s5(), b in scalar_s5()) {
        let (x, y) = (a.to_f64().unwrap(), b.to_f64().unwrap());
        let tol = 1e-12 * (1.0 + x.abs() + y.abs()).powi(2);
        prop_assert!(((&a + &b).to_f64().unwrap() - (x + y)).abs() <= tol);
        prop_assert!(((&a * &b).to_f64().unwrap() - x * y).abs() <= tol);
        let sign = a.real_sign().unwrap();
        if x.abs() > 1e-9 {
            prop_assert_eq!(sign, x.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn quaternions_associate(z in quat_s5(), w in quat_s5(), v in quat_s5()) {
        prop_assert_eq!(z.times(&w).times(&v), z.times(&w.times(&v)));
    }

    #[test]
    fn hamilton_norm_is_anisotropic(z in quat_s5()) {
        // the norm is a sum of squares over a real field
        prop_assert_eq!(z.norm().is_zero(), z.is_zero());
        if !z.is_zero() {
            prop_assert_eq!(z.norm().real_sign().unwrap(), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn quaternion_inverse(z in nonzero(quat_s5())) {
        let inv = z.inv().unwrap();
        prop_assert!(z.times(&inv).minus(&Quaternion::one(z.spec())).is_zero());
        prop_assert!(inv.times(&z).minus(&Quaternion::one(z.spec())).is_zero());
    }

    #[test]
    fn quaternion_matches_table_oracle(z in quat_q(), w in quat_q()) {
        prop_assert_eq!(to_oracle(&z.times(&w)), o_mul(&to_oracle(&z), &to_oracle(&w)));
        prop_assert_eq!(z.norm().as_rational().unwrap().clone(), o_norm(&to_oracle(&z)));
        prop_assert_eq!(to_oracle(&z.conj()), o_conj(&to_oracle(&z)));
    }

    #[test]
    fn octonion_matches_oracle(x in oct_q(), y in oct_q()) {
        prop_assert_eq!(o8_to_oracle(&x.times(&y)), o8_mul(&o8_to_oracle(&x), &o8_to_oracle(&y)));
    }

    #[test]
    fn octonion_norm_and_inverse(x in nonzero(oct_q()), y in oct_q()) {
        law_norm_multiplicative(&x, &y)?;
        let inv = x.inv().unwrap();
        prop_assert!(x.times(&inv).minus(&Octonion::one(x.spec())).is_zero());
        // alternativity makes (y x) x^-1 = y
        prop_assert_eq!(y.times(&x).times(&inv), y);
    }

    #[test]
    fn octonion_powers_do_not_depend_on_nesting(x in oct_q()) {
        for e in 0..=6 {
            prop_assert_eq!(x.pow(e), right_nested_pow(&x, e), "e = {}", e);
        }
    }

    #[test]
    fn poly_ring_axioms(f in qpoly(quat_q(), 0, 3), g in qpoly(quat_q(), 0, 3), h in qpoly(quat_q(), 0, 2)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&f * &Poly::one(&hq()), f.clone());
    }

    #[test]
    fn poly_ops_match_oracle(f in qpoly(quat_q(), 0, 3), g in qpoly(quat_q(), 0, 3), l in quat_q()) {
        prop_assert_eq!(o_coeffs(&(&f * &g)), o_poly_mul(&o_coeffs(&f), &o_coeffs(&g)));
        prop_assert_eq!(to_oracle(&f.eval(&l)), o_eval(&o_coeffs(&f), &to_oracle(&l)));
        let want: Vec<Scalar> = o_companion(&f)
            .into_iter()
            .map(|r| Scalar::rational(FieldSpec::Rationals, r))
            .collect();
        let c = solver::companion(&f).unwrap();
        prop_assert_eq!(c.coeffs(), want.as_slice());
    }

    #[test]
    fn poly_text_round_trip(f in qpoly(quat_q(), 0, 3), g in opoly(2)) {
        prop_assert_eq!(parse_poly::<Quaternion>(&f.to_string(), &hq()).unwrap(), f.clone());
        prop_assert_eq!(parse_poly::<Octonion>(&g.to_string(), &oq()).unwrap(), g);
    }

    #[test]
    fn composition_multiplies_degrees(f in qpoly(quat_int(), 1, 3), g in qpoly(quat_int(), 1, 3)) {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        prop_assert_eq!(f.compose(&g).degree(), Some(m * n));
    }

    #[test]
    fn conj_poly_is_an_anti_involution(f in qpoly(quat_q(), 0, 3), g in qpoly(quat_q(), 0, 3)) {
        prop_assert_eq!(solver::conj_poly(&solver::conj_poly(&f)), f.clone());
        prop_assert_eq!(
            solver::conj_poly(&(&f * &g)),
            &solver::conj_poly(&g) * &solver::conj_poly(&f)
        );
    }

    #[test]
    fn subfield_is_closed(l in quat_int(), a in small_rat(), b in small_rat(), c in small_rat(), d in small_rat()) {
        let u = in_subfield(&l, &a, &b);
        let v = in_subfield(&l, &c, &d);
        prop_assert!(u.times(&v).commutes(&l));
        prop_assert!(u.plus(&v).commutes(&l));
        prop_assert_eq!(u.times(&v), v.times(&u));
        if !u.is_zero() {
            prop_assert!(u.inv().unwrap().commutes(&l));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_finds_constructed_roots(q in qpoly(quat_int(), 0, 2), l in quat_int()) {
        let g = &q * &linear(&l);
        let set = solver::roots(&g, &SolveOptions::default()).unwrap();
        prop_assert!(set.contains(&l), "{} misses {}", g, l);
        for p in set.points() {
            prop_assert!(g.eval(p).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fixed_points_stay_fixed_under_iteration(q in qpoly(quat_int(), 0, 1), l in quat_int()) {
        // f = q (x - l) + x fixes l
        let f = &(&q * &linear(&l)) + &Poly::x(&hq());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(f.eval(&l), l.clone());
        let rep = dynamics::orbit(&f, &l, 5, Semantics::Compose, 1 << 12).unwrap();
        for (n, p) in rep.points.iter().enumerate() {
            prop_assert_eq!(p, &l, "n = {}", n + 1);
        }
    }
}
