use cyeq::exact::{rat, Poly, Rat};
use cyeq::fit::{fit, format_sequence, parse_sequence, search, FitSpec};
use cyeq::ThetaOperator;
use proptest::prelude::*;

/// Random MUM operators of order 1..=3 and degree 1..=2.
fn mum_operator() -> impl Strategy<Value = ThetaOperator> {
    (1usize..=3, 1usize..=2)
        .prop_flat_map(|(r, p)| (Just(r), prop::collection::vec(prop::collection::vec(-4i64..=4, r + 1), p)))
        .prop_filter_map("nonzero tail", |(r, rows)| {
            let mut polys = vec![Poly::monomial(r, rat(1))];
            polys.extend(rows.iter().map(|c| Poly::from_ints(c)));
            if polys.last().unwrap().is_zero() {
                return None;
            }
            ThetaOperator::new(polys).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn recovers_generating_operator(op in mum_operator()) {
        let spec = FitSpec::new(op.order(), op.degree());
        let seq = op.series_solution(spec.terms_needed() + 10).unwrap();
        prop_assume!(seq.iter().skip(1).any(|a| *a != Rat::from_integer(0.into())));
        let res = fit(&seq, &spec).unwrap();
        let found = res.operator.clone().expect("an annihilator exists");
        prop_assert!(found.annihilates(&seq));
        if res.nullity == 1 {
            prop_assert_eq!(found, op);
        }
    }

    #[test]
    fn search_is_sound_and_minimal(op in mum_operator()) {
        let seq = op.series_solution(40).unwrap();
        let (spec, res) = search(&seq, 3, 2).unwrap();
        prop_assert!(res.operator.as_ref().unwrap().annihilates(&seq));
        for r in 1..=spec.order {
            let top = if r == spec.order { spec.degree } else { 3 };
            for p in 0..top {
                let s = FitSpec::new(r, p);
                if s.terms_needed() <= seq.len() {
                    prop_assert!(!fit(&seq, &s).unwrap().success(), "({}, {}) precedes ({}, {})", r, p, spec.order, spec.degree);
                }
            }
        }
    }

    #[test]
    fn sequence_text_round_trip(v in prop::collection::vec((-1000i64..1000, 1i64..50), 0..20)) {
        let seq: Vec<Rat> = v.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect();
        prop_assert_eq!(parse_sequence(&format_sequence(&seq)).unwrap(), seq);
    }
}
