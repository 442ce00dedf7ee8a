use cyeq::catalog;
use cyeq::exact::{rat, ratio, Poly};
use cyeq::frobenius::frobenius;
use cyeq::ThetaOperator;
use proptest::prelude::*;

fn row(r: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, r + 1)
}

/// Random canonical operators of order at most 5 and degree at most 6.
fn operator() -> impl Strategy<Value = ThetaOperator> {
    (1usize..=5, 0usize..=6)
        .prop_flat_map(|(r, p)| (Just(r), prop::collection::vec(row(r), p + 1)))
        .prop_filter_map("nonzero leading and trailing rows", |(r, mut rows)| {
            rows[0][r] = rows[0][r].max(1);
            if rows.last().unwrap().iter().all(|&c| c == 0) {
                return None;
            }
            let polys = rows.iter().map(|c| Poly::from_ints(c)).collect();
            ThetaOperator::new(polys).ok()
        })
}

fn mum_operator() -> impl Strategy<Value = ThetaOperator> {
    operator().prop_map(|op| {
        let mut rows = op.rows().to_vec();
        rows[0] = Poly::monomial(op.order(), rat(1));
        ThetaOperator::new(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn recurrence_round_trip(op in operator()) {
        let rec = op.to_recurrence();
        prop_assert_eq!(ThetaOperator::from_recurrence(&rec), op);
    }

    #[test]
    fn mum_iff_pure_power_leading(op in prop_oneof![operator(), mum_operator()]) {
        let rec = op.to_recurrence();
        let c0 = &rec.coeffs()[0];
        let shifted = Poly::from_ints(&[op.degree() as i64, 1]).pow(op.order() as u32);
        let pure = c0.degree() == Some(op.order()) && &shifted.scale(&c0.leading()) == c0;
        prop_assert_eq!(op.is_mum(), pure);
    }

    #[test]
    fn mirror_is_an_involution(op in operator(), a in prop_oneof![Just(rat(1)), Just(rat(-1)), Just(rat(900)), Just(ratio(1, 27))], half in any::<bool>()) {
        let s = if half { ratio(1, 2) } else { rat(1) };
        let twice = op.mirror_at_infinity(&a, &s).unwrap().mirror_at_infinity(&a, &s).unwrap();
        prop_assert_eq!(twice, op);
    }

    #[test]
    fn text_format_round_trip(op in operator()) {
        prop_assert_eq!(op.to_text().parse::<ThetaOperator>().unwrap(), op);
    }

    #[test]
    fn d_form_round_trip(op in operator()) {
        prop_assert_eq!(ThetaOperator::from_d(&op.to_d()).unwrap(), op);
    }
}

#[test]
fn catalog_operators_round_trip() {
    for e in catalog::entries().unwrap() {
        if let Some(op) = e.operator {
            assert_eq!(ThetaOperator::from_recurrence(&op.to_recurrence()), op, "{}", e.id);
        }
    }
}

#[test]
fn cond2_implies_wronskian_condition() {
    let mut checked = 0;
    for e in catalog::entries().unwrap() {
        let Some(op) = e.operator else { continue };
        if op.order() != 4 || !op.is_mum() || !op.cond2().unwrap() {
            continue;
        }
        let basis = frobenius(&op, 30).unwrap();
        assert!(basis.wronskian_condition(30).unwrap(), "{}", e.id);
        checked += 1;
    }
    assert!(checked >= 15);
}
