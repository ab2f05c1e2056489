use num_integer::Integer;
use proptest::prelude::*;
use quadpair::arith::{
    gauss_brute, gauss_quad, is_prime, jacobi, mod_inv, r2, r2_table, ramanujan, ramanujan_brute, rho_quadratic,
    QuadCongruence,
};
use quadpair::counting::{count_s, reduce_to_pair, CountOptions, LinearSystem, WeightSpec};
use quadpair::expsums::{s_dq, EvalCtx, Method};
use quadpair::forms::{MVec, QuadPair};

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..60).prop_filter("odd prime", |&p| is_prime(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_closed_form(p in odd_prime(), r in 1u32..=2, a in 1i128..200, m in -50i128..50) {
        prop_assume!(a % p as i128 != 0);
        let c = gauss_quad(a, m, p, r).unwrap();
        prop_assert!(c.approx_eq(&gauss_brute(a, m, p, r).unwrap()));
    }

    #[test]
    fn ramanujan_is_multiplicative(q1 in 1u64..40, q2 in 1u64..40, b in -100i128..100) {
        prop_assume!(q1.gcd(&q2) == 1);
        prop_assert_eq!(ramanujan(q1 * q2, b), ramanujan(q1, b) * ramanujan(q2, b));
        prop_assert_eq!(ramanujan_brute(q1, b).as_integer(), Some(ramanujan(q1, b) as i128));
    }

    #[test]
    fn jacobi_is_multiplicative_in_top(a in -500i128..500, b in -500i128..500, n in (1i128..200).prop_map(|n| 2 * n + 1)) {
        let ab = jacobi(a * b, n).unwrap() as i32;
        prop_assert_eq!(ab, jacobi(a, n).unwrap() as i32 * jacobi(b, n).unwrap() as i32);
    }

    #[test]
    fn inverse_inverts(a in -1000i128..1000, n in 2u64..500) {
        match mod_inv(a, n) {
            Ok(x) => prop_assert_eq!((a.rem_euclid(n as i128) * x as i128) % n as i128, 1),
            Err(_) => prop_assert!(a.gcd(&(n as i128)) != 1),
        }
    }

    #[test]
    fn rho_at_most_two_roots_mod_good_prime(c0 in 1i128..100, c1 in -100i128..100, c2 in -100i128..100, p in odd_prime()) {
        let f = QuadCongruence::new(c0, c1, c2);
        prop_assume!(c0 % p as i128 != 0);
        prop_assert!(rho_quadratic(&f, p, 1).unwrap() <= 2);
    }

    #[test]
    fn semi_sum_at_zero_vector_counts_zeros(d in 1u64..12) {
        let p = QuadPair::new([1, 1, 1, -1, 1]).unwrap();
        let v = s_dq(&p, d, 1, &MVec::ZERO, Method::Semi, &EvalCtx::default()).unwrap();
        prop_assert!(v.as_integer().is_some_and(|n| n >= 1));
    }

    #[test]
    fn count_is_linear_in_weight(lambda in 0.0f64..4.0, b in 4.0f64..10.0) {
        let pair = reduce_to_pair(&LinearSystem::new([1, 0, 0, 1, 1, 1, 1, 4]).unwrap()).unwrap();
        let w = WeightSpec::default();
        let opts = CountOptions::default();
        let base = count_s(&pair, &w, b, &opts).unwrap().value;
        let scaled = count_s(&pair, &w.scaled(lambda), b, &opts).unwrap().value;
        prop_assert!((scaled - lambda * base).abs() <= 1e-12 * (1.0 + scaled.abs()));
    }
}

#[test]
fn table_agrees_with_direct_r2() {
    let t = r2_table(5000);
    for n in 0..=5000i64 {
        assert_eq!(t.get(n) as u64, r2(n as i128), "n={n}");
    }
    assert_eq!(t.get(-3), 0);
}
