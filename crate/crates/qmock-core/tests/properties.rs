//! Property tests for the series ring: ring axioms to shared precision,
//! inversion, the dilation homomorphism, and serialization round trips.

use proptest::prelude::*;

use qmock_core::series::{int, rat, SeriesRecord};
use qmock_core::{Order, QSeries};

fn arb_series() -> impl Strategy<Value = QSeries> {
    let term = (-6i64..=6, -9i64..=9, 1i64..=4);
    (proptest::collection::vec(term, 0..6), 8i64..=14).prop_map(|(terms, order)| {
        QSeries::from_terms(
            terms.into_iter().map(|(e, n, d)| (e, rat(n, d))),
            Order::UpTo(order),
        )
    })
}

fn arb_unit() -> impl Strategy<Value = QSeries> {
    // leading term c * q^e with c != 0, plus noise above it
    let lead = (-4i64..=4, prop_oneof![(-3i64..=3).prop_filter("nonzero", |n| *n != 0)]);
    let noise = proptest::collection::vec((1i64..=6, -5i64..=5), 0..4);
    (lead, noise).prop_map(|((e, c), noise)| {
        let mut terms = vec![(e, int(c))];
        for (off, n) in noise {
            terms.push((e + off, int(n)));
        }
        QSeries::from_terms(terms, Order::Exact)
    })
}

fn shared_order(series: &[&QSeries]) -> i64 {
    series
        .iter()
        .map(|s| match s.order() {
            Order::Exact => i64::MAX,
            Order::UpTo(n) => n,
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_commutes(a in arb_series(), b in arb_series()) {
        let l = a.add(&b);
        let r = b.add(&a);
        let n = shared_order(&[&l, &r]);
        prop_assert!(l.eq_upto(&r, n).unwrap().is_equal());
    }

    #[test]
    fn mul_commutes(a in arb_series(), b in arb_series()) {
        let l = a.mul(&b);
        let r = b.mul(&a);
        let n = shared_order(&[&l, &r]);
        prop_assert!(l.eq_upto(&r, n).unwrap().is_equal());
    }

    #[test]
    fn mul_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        let n = shared_order(&[&l, &r]);
        prop_assert!(l.eq_upto(&r, n).unwrap().is_equal());
    }

    #[test]
    fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        let n = shared_order(&[&l, &r]);
        prop_assert!(l.eq_upto(&r, n).unwrap().is_equal());
    }

    #[test]
    fn invert_is_two_sided(a in arb_unit(), n in 4i64..=12) {
        let inv = a.invert(n).unwrap();
        prop_assert!(a.mul(&inv).eq_upto(&QSeries::one(), n).unwrap().is_equal());
        prop_assert!(inv.mul(&a).eq_upto(&QSeries::one(), n).unwrap().is_equal());
    }

    #[test]
    fn dilate_is_ring_hom(a in arb_series(), b in arb_series(), m in 1i64..=4) {
        let prod = a.mul(&b).dilate(m);
        let prod2 = a.dilate(m).mul(&b.dilate(m));
        let n = shared_order(&[&prod, &prod2]);
        prop_assert!(prod.eq_upto(&prod2, n).unwrap().is_equal());

        let sum = a.add(&b).dilate(m);
        let sum2 = a.dilate(m).add(&b.dilate(m));
        let n = shared_order(&[&sum, &sum2]);
        prop_assert!(sum.eq_upto(&sum2, n).unwrap().is_equal());
    }

    #[test]
    fn record_round_trip_is_identity(a in arb_series()) {
        let rec = SeriesRecord::from(&a);
        let json = serde_json::to_string(&rec).unwrap();
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(QSeries::try_from(&back).unwrap(), a);
    }

    #[test]
    fn textual_round_trip_preserves_terms(a in arb_series()) {
        let text = a.to_string();
        let parsed: QSeries = text.parse().unwrap();
        for (e, c) in a.terms() {
            prop_assert_eq!(&parsed.coeff(e), c);
        }
        prop_assert_eq!(parsed.num_terms(), a.num_terms());
    }
}
