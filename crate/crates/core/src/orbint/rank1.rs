//! Rank-one orbital integrals in closed form, plus the direct coset-sum
//! oracle they are validated against.
//!
//! For the indicator test function `1_{O x cO}` on the split binary space
//! and an orbit of invariant `zeta`, the normalized integral with
//! `M = v(c^{-1} zeta)` is the alternating polynomial
//! `sum_{j=0}^{M} (-1)^j X^{-j}` in `X = q^{-s}` (zero for `M < 0`). Its
//! value at `s = 0` is `1` when `M >= 0` is even and `0` otherwise, and for
//! odd `M` the derivative is `-max(0, (1+M)/2) log q`.

use crate::exact::{LaurentPoly, Rat};

/// Closed form of the normalized rank-one orbital integral as a polynomial
/// in `X = q^{-s}`, parameterized by `M = v(c^{-1} zeta)`.
pub fn orb_rank1_split(m: i64) -> LaurentPoly {
    let mut poly = LaurentPoly::zero();
    if m < 0 {
        return poly;
    }
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        poly.add_term(-j, Rat::from_int(sign));
    }
    poly
}

/// Direct coset-sum oracle: the multiplicative integral restricted to the
/// shells `v(t) = k` contributes `chi(pi)^k X^k` for
/// `k in [v(c) - v(u2), v(u1)]`, and the whole sum is normalized by
/// `chi(u1) |u1|^{-s}`. Must agree with [`orb_rank1_split`] for every split
/// of `M = v(u1) + v(u2) - v(c)`.
pub fn orb_rank1_split_brute(v_u1: i64, v_u2: i64, v_c: i64) -> LaurentPoly {
    let mut poly = LaurentPoly::zero();
    let lo = v_c - v_u2;
    let hi = v_u1;
    for k in lo..=hi {
        let sign = if (k + v_u1) % 2 == 0 { 1 } else { -1 };
        poly.add_term(k - v_u1, Rat::from_int(sign));
    }
    poly
}

/// Rank-one orbital integral on the hermitian side for the unit-lattice
/// indicator: `1` iff `v(delta zeta) >= 0` and even.
pub fn orb_rank1_hermitian(v_delta_zeta: i64) -> Rat {
    if v_delta_zeta >= 0 && v_delta_zeta % 2 == 0 {
        Rat::one()
    } else {
        Rat::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laurent_special_values;

    #[test]
    fn closed_form_values() {
        // M = 0: constant 1
        assert_eq!(orb_rank1_split(0), LaurentPoly::one());
        // M = 2: 1 - X^{-1} + X^{-2}, value 1
        let p = orb_rank1_split(2);
        assert_eq!(p.num_terms(), 3);
        let (v, _) = laurent_special_values(&p, 3);
        assert_eq!(v, Rat::one());
        // M = -1: zero polynomial
        assert!(orb_rank1_split(-1).is_zero());
    }

    #[test]
    fn value_pattern() {
        for m in -4..=8 {
            let (v, _) = laurent_special_values(&orb_rank1_split(m), 3);
            let expected = if m >= 0 && m % 2 == 0 { Rat::one() } else { Rat::zero() };
            assert_eq!(v, expected, "M = {m}");
        }
    }

    #[test]
    fn derivative_dictionary() {
        // -dOrb / log q = max(0, (1+M)/2) for odd M
        for m in (-7..=11).filter(|m| m % 2 != 0) {
            for q in [3u64, 5, 9, 27] {
                let (l, f) = crate::exact::factor_prime_power(q).unwrap();
                let (_, d) = laurent_special_values(&orb_rank1_split(m), q);
                let got = -(d.log_coeff(l) / Rat::from_int(f));
                let expected = Rat::from_int(0.max((1 + m) / 2));
                assert_eq!(got, expected, "M = {m}, q = {q}");
            }
        }
    }

    #[test]
    fn brute_is_split_independent() {
        // example splits from the operation contract
        assert_eq!(orb_rank1_split_brute(0, 2, 0), orb_rank1_split(2));
        assert_eq!(orb_rank1_split_brute(5, -3, 0), orb_rank1_split(2));
        assert!(orb_rank1_split_brute(0, 0, 1).is_zero());
    }

    #[test]
    fn oracle_identity_exhaustive() {
        for a in -4..=4 {
            for b in -4..=4 {
                for c in -4..=4 {
                    assert_eq!(
                        orb_rank1_split_brute(a, b, c),
                        orb_rank1_split(a + b - c),
                        "split ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn hermitian_side_pattern() {
        assert_eq!(orb_rank1_hermitian(0), Rat::one());
        assert_eq!(orb_rank1_hermitian(2), Rat::one());
        assert_eq!(orb_rank1_hermitian(1), Rat::zero());
        assert_eq!(orb_rank1_hermitian(-2), Rat::zero());
    }
}
