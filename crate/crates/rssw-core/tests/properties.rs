//! Property tests for the exact layers: the quaternion matrix model and the
//! quotient-ring arithmetic.

use num_bigint::BigInt;
use proptest::prelude::*;

use rssw_core::repring::{char_at_i, char_at_j, rr_mul, RepRingElement};
use rssw_core::scalars::{mat2_mul, qinv, qmul, rat, Quaternion};

fn arb_rational() -> impl Strategy<Value = rssw_core::scalars::Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| rat(n, d))
}

fn arb_quaternion() -> impl Strategy<Value = Quaternion> {
    (arb_rational(), arb_rational(), arb_rational(), arb_rational())
        .prop_map(|(a, b, c, d)| Quaternion::from_reals(a, b, c, d))
}

fn arb_repring() -> impl Strategy<Value = RepRingElement> {
    (
        -9i64..=9,
        -9i64..=9,
        proptest::collection::vec((1u32..=6, -9i64..=9), 0..4),
    )
        .prop_map(|(c0, c1, hs)| {
            let mut e = RepRingElement::from_int(c0)
                .add(&RepRingElement::d().scale(&BigInt::from(c1)));
            for (l, v) in hs {
                e = e.add(&RepRingElement::h().pow(l).scale(&BigInt::from(v)));
            }
            e
        })
}

proptest! {
    #[test]
    fn component_product_is_matrix_product(a in arb_quaternion(), b in arb_quaternion()) {
        prop_assert_eq!(qmul(&a, &b).matrix(), mat2_mul(&a.matrix(), &b.matrix()));
    }

    #[test]
    fn norm_is_multiplicative(a in arb_quaternion(), b in arb_quaternion()) {
        prop_assert_eq!(qmul(&a, &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
    }

    #[test]
    fn inverse_is_exact(a in arb_quaternion()) {
        if !a.is_zero() {
            prop_assert_eq!(qmul(&a, &qinv(&a).unwrap()), Quaternion::one());
        }
    }

    #[test]
    fn conjugation_reverses_products(a in arb_quaternion(), b in arb_quaternion()) {
        prop_assert_eq!(qmul(&a, &b).conj(), qmul(&b.conj(), &a.conj()));
    }

    #[test]
    fn ring_product_commutes_and_normalizes(a in arb_repring(), b in arb_repring()) {
        let ab = rr_mul(&a, &b);
        prop_assert_eq!(&ab, &rr_mul(&b, &a));
        for v in ab.h_coeffs().values() {
            prop_assert!(!num_traits::Zero::is_zero(v));
        }
    }

    #[test]
    fn characters_respect_products(a in arb_repring(), b in arb_repring()) {
        let ab = rr_mul(&a, &b);
        prop_assert_eq!(char_at_j(&ab), char_at_j(&a) * char_at_j(&b));
        prop_assert_eq!(char_at_i(&ab), char_at_i(&a) * char_at_i(&b));
    }
}
