use std::collections::BTreeMap;

use proptest::prelude::*;
use qlrec::field::{MultiPoly, RatFunc, Rational};
use qlrec::lattice::{gen_power_int, t_pow, LatticeSpec, S, X};
use qlrec::phi::{check_delta_identity, check_nabla_identity, WeightTable};

const VARS: [&str; 3] = ["x", "y", "t"];

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, -2i32..=3, 0i32..=2, -1i32..=2), 1..4).prop_map(|ts| {
        ts.into_iter().fold(MultiPoly::zero(), |acc, (c, a, b, e)| {
            &acc + &MultiPoly::monomial(Rational::from_int(c), &[(VARS[0], a), (VARS[1], b), (VARS[2], e)])
        })
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { MultiPoly::one() } else { d };
        RatFunc::new(n, d).expect("nonzero denominator")
    })
}

fn rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30).prop_map(|(p, q)| Rational::new(p, q))
}

fn t_value() -> impl Strategy<Value = Rational> {
    (2i64..=9, 2i64..=9).prop_filter("t != 1", |(p, q)| p != q).prop_map(|(p, q)| Rational::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn exact_division_round_trip(a in poly(), b in poly(), c in poly(), big in any::<bool>()) {
        prop_assume!(!b.is_zero());
        let r = Rational::new(1_000_000_000_000_000_007, 3);
        let a = if big { a.scale(&r).scale(&r).scale(&r) } else { a };
        let p = &(&a * &b) * &c;
        prop_assert_eq!(p.div_exact(&b).unwrap(), &a * &c);
        if b.nterms() > 1 {
            prop_assert!((&p + &MultiPoly::one()).div_exact(&b).is_none());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(), b in ratfunc(), r in ratfunc()) {
        let m = BTreeMap::from([("x".to_string(), r)]);
        let (Ok(sa), Ok(sb)) = (a.substitute(&m), b.substitute(&m)) else { return Ok(()) };
        prop_assert_eq!((&a * &b).substitute(&m).unwrap(), &sa * &sb);
        prop_assert_eq!((&a + &b).substitute(&m).unwrap(), &sa + &sb);
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(a in ratfunc(), b in ratfunc(), x in rat(), y in rat(), t in t_value()) {
        let v = BTreeMap::from([("x".to_string(), x), ("y".to_string(), y), ("t".to_string(), t)]);
        let (Ok(ea), Ok(eb)) = (a.eval(&v), b.eval(&v)) else { return Ok(()) };
        prop_assert_eq!((&a * &b).eval(&v).unwrap(), &ea * &eb);
        prop_assert_eq!((&a - &b).eval(&v).unwrap(), &ea - &eb);
    }

    #[test]
    fn generalized_power_identities(mu in -2i64..=2, nu in -2i64..=2, m in 0u32..=4, k in 0u32..=4) {
        prop_assume!(k <= m);
        let l = LatticeSpec::q_canonical();
        let (s, z) = (RatFunc::var(S), RatFunc::var(X));
        let g = |order: i64, s: &RatFunc, z: &RatFunc, n: u32| gen_power_int(&l, order, s, z, n).unwrap();
        let zk = &z * &t_pow(-2 * k as i64);
        let x = |order: i64, v: &RatFunc| &t_pow(order) * v;
        // equal orders
        prop_assert_eq!(g(mu, &s, &z, m).checked_div(&g(nu, &s, &z, m)).unwrap(), t_pow(m as i64 * (mu - nu)));
        // same lattice, orders m and k
        prop_assert_eq!(g(mu, &s, &z, m).checked_div(&g(mu, &s, &z, k)).unwrap(), g(mu, &s, &zk, m - k));
        // mixed
        prop_assert_eq!(
            g(mu, &s, &z, m).checked_div(&g(nu, &s, &z, k)).unwrap(),
            &t_pow(k as i64 * (mu - nu)) * &g(mu, &s, &zk, m - k)
        );
        // order m+1 over a shifted order m
        let s1 = &s * &t_pow(2);
        prop_assert_eq!(g(mu, &s, &z, m + 1).checked_div(&g(mu - 1, &s1, &z, m)).unwrap(), &x(mu - m as i64, &s) - &x(mu - m as i64, &z));
        let sm = &s * &t_pow(2 * m as i64);
        prop_assert_eq!(g(mu, &s, &z, m + 1).checked_div(&g(mu - 1, &s, &z, m)).unwrap(), &x(mu - m as i64, &sm) - &x(mu - m as i64, &z));
    }

    #[test]
    fn phi_sum_difference_identities(
        values in prop::collection::vec(rat(), 1..6),
        start in -3i64..=3,
        nu in -2i64..=2,
        mu in -3i64..=3,
        gap in 8i64..=12,
        t in t_value(),
    ) {
        let z = start + values.len() as i64 + gap;
        let w = WeightTable::from_values(nu, start, values, t.clone()).unwrap();
        let xz = (&t * &t).pow(z as i32).unwrap();
        prop_assert!(check_nabla_identity(&w, mu, &xz).unwrap());
        prop_assert!(check_delta_identity(&w, mu, &xz).unwrap());
    }
}
