use cyeq::catalog;
use cyeq::exact::{rat, ratio, PowerSeries};
use cyeq::fit::{fit, FitSpec};
use cyeq::frobenius::frobenius;
use cyeq::pullback::{derive_pullback, double_wronskian_check, pullback_factor, verify_pullback_pair, wronskians};
use cyeq::ThetaOperator;

fn cond2_catalog(max_degree: usize) -> Vec<(String, ThetaOperator)> {
    catalog::entries()
        .unwrap()
        .into_iter()
        .filter_map(|e| e.operator.map(|o| (e.id, o)))
        .filter(|(_, o)| o.order() == 4 && o.is_mum() && o.degree() <= max_degree && o.cond2().unwrap())
        .collect()
}

/// The wronskian `w_0` satisfies a fifth order operator of twice the degree,
/// and that operator satisfies the fifth order condition.
fn wronskian_operator(id: &str, op: &ThetaOperator) {
    let p = 2 * op.degree();
    let spec = FitSpec::new(5, p);
    let basis = frobenius(op, spec.terms_needed() + 5).unwrap();
    let w = wronskians(&basis).unwrap();
    assert_eq!(w.w0.log_degree(), Some(0), "{id}");
    assert_eq!(w.w1.log_degree(), Some(1), "{id}");
    let seq = w.w0.part(0).into_coeffs();
    let op5 = fit(&seq, &spec).unwrap().operator.unwrap_or_else(|| panic!("{id}: no fifth order operator"));
    assert!(op5.cond2_5().unwrap(), "{id}");
    assert!(op5.apply(&w.w1).vanishes_below(seq.len()), "{id}");
    if !seq.iter().all(|c| c.is_integer()) {
        println!("{id}: w0 has non-integral coefficients");
    }
}

#[test]
fn wronskians_satisfy_fifth_order_equations() {
    for (id, op) in cond2_catalog(3) {
        wronskian_operator(&id, &op);
    }
}

#[test]
#[ignore = "several minutes; covers the high degree entries"]
fn wronskians_satisfy_fifth_order_equations_full() {
    for (id, op) in cond2_catalog(usize::MAX) {
        wronskian_operator(&id, &op);
    }
}

#[test]
fn double_wronskian_on_catalog() {
    let ops = cond2_catalog(usize::MAX);
    assert!(ops.len() >= 15);
    for (id, op) in ops {
        let basis = frobenius(&op, 30).unwrap();
        assert!(double_wronskian_check(&basis, &op, 30).unwrap(), "{id}");
    }
}

#[test]
fn theta_powers_pair() {
    assert!(verify_pullback_pair(&ThetaOperator::theta_power(4), &ThetaOperator::theta_power(5), 12).unwrap());
}

#[test]
fn printed_pairs_agree_up_to_a_factor() {
    let zud5 = catalog::operator("zud5").unwrap();
    let f = pullback_factor(&catalog::operator("32pb").unwrap(), &zud5, 20).unwrap().unwrap();
    assert_eq!(f.coeff(1), rat(-405));
    assert_eq!(f.coeff(2), rat(27297));

    let hyp5 = catalog::operator("hyp5").unwrap();
    let f = pullback_factor(&catalog::operator("hyp5pb").unwrap(), &hyp5, 20).unwrap().unwrap();
    let base = PowerSeries::from_ints(&[1, -11943936], 20);
    let expected = base.log().unwrap().scale(&ratio(3, 2)).exp().unwrap();
    assert_eq!(f, expected);
    let printed = catalog::operator("hyp5pb-printed").unwrap();
    assert!(!printed.cond2().unwrap());
}

#[test]
fn derived_pullback_is_equivalent() {
    let zud5 = catalog::operator("zud5").unwrap();
    let op4 = derive_pullback(&zud5, 60, 8).unwrap();
    assert_eq!(op4.order(), 4);
    assert!(op4.cond2().unwrap());
    assert!(pullback_factor(&op4, &zud5, 20).unwrap().is_some());
}
