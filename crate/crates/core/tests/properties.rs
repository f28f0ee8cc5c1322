//! Property tests for the exact kernels.

use afl_core::exact::{
    laurent_special_values, loglin_reduce_eq, LaurentPoly, LogLinear, Rat,
};
use afl_core::localfield::padic::{val_and_eta, PadicCtx};
use afl_core::orbint::{orb_rank1_split, orb_rank1_split_brute};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..6, -9i64..10), 0..6).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, Rat::from_int(c));
        }
        p
    })
}

fn arb_loglin() -> impl Strategy<Value = LogLinear> {
    (
        prop::collection::btree_map(prop::sample::select(vec![2u64, 3, 5, 7]), -9i64..10, 0..3),
        -4i64..5,
    )
        .prop_map(|(logs, r)| {
            let mut x = LogLinear::from_real(r as f64 * 0.25);
            for (l, c) in logs {
                x = x + LogLinear::from_log_term(l, Rat::from_int(c));
            }
            x
        })
}

proptest! {
    #[test]
    fn special_values_are_a_ring_homomorphism(p in arb_poly(), q_poly in arb_poly(),
                                              q in prop::sample::select(vec![3u64, 5, 9, 27])) {
        let (vp, dp) = laurent_special_values(&p, q);
        let (vq, dq) = laurent_special_values(&q_poly, q);
        let (vs, ds) = laurent_special_values(&(p.clone() + q_poly.clone()), q);
        prop_assert_eq!(vs, vp.clone() + vq.clone());
        prop_assert_eq!(ds, dp.clone() + dq.clone());
        let (vm, dm) = laurent_special_values(&(p * q_poly), q);
        prop_assert_eq!(vm, vp.clone() * vq.clone());
        // Leibniz: d(PQ) = v(P) d(Q) + d(P) v(Q), exactly
        prop_assert_eq!(dm, dq.scale(&vp) + dp.scale(&vq));
    }

    #[test]
    fn loglin_mod_s_is_an_equivalence(x in arb_loglin(), y in arb_loglin(), z in arb_loglin()) {
        let s: std::collections::BTreeSet<u64> = [3u64, 7].into_iter().collect();
        prop_assert!(loglin_reduce_eq(&x, &x, &s));
        if loglin_reduce_eq(&x, &y, &s) {
            prop_assert!(loglin_reduce_eq(&y, &x, &s));
            if loglin_reduce_eq(&y, &z, &s) {
                prop_assert!(loglin_reduce_eq(&x, &z, &s));
            }
        }
        // adding any rational multiple of log l, l in S, preserves the class
        let shifted = x.clone() + LogLinear::from_log_term(3, Rat::new(5.into(), 2.into()));
        prop_assert!(loglin_reduce_eq(&x, &shifted, &s));
    }

    #[test]
    fn rank1_oracle_identity(a in -6i64..7, b in -6i64..7, c in -6i64..7) {
        prop_assert_eq!(orb_rank1_split_brute(a, b, c), orb_rank1_split(a + b - c));
    }

    #[test]
    fn eta_multiplicative_on_rationals(n1 in 1i64..400, d1 in 1i64..400,
                                       n2 in 1i64..400, d2 in 1i64..400) {
        let ctx = PadicCtx::new(3, 1, 0).unwrap();
        let x = ctx.rational(Rat::new(n1.into(), d1.into()));
        let y = ctx.rational(Rat::new(n2.into(), d2.into()));
        let (_, ex) = val_and_eta(&x).unwrap();
        let (_, ey) = val_and_eta(&y).unwrap();
        let (_, exy) = val_and_eta(&x.mul(&y)).unwrap();
        prop_assert_eq!(exy, Some(ex.unwrap() * ey.unwrap()));
    }

    #[test]
    fn rank1_value_pattern(m in -12i64..16) {
        let (v, _) = laurent_special_values(&orb_rank1_split(m), 5);
        let expected = if m >= 0 && m % 2 == 0 { Rat::one() } else { Rat::zero() };
        prop_assert_eq!(v, expected);
    }
}
