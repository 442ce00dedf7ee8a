use cyeq::catalog;
use cyeq::congruence::{base_p_digits, dwork_check, identity_suite, lucas_check};
use cyeq::exact::{binom, rat, Rat};
use cyeq::frobenius::frobenius;
use cyeq::pullback::wronskians;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn digits_reconstruct(n in 0u64..100_000, p in prime()) {
        let d = base_p_digits(n, p);
        prop_assert!(d.iter().all(|&x| x < p));
        prop_assert_eq!(d.iter().rev().fold(0, |acc, &x| acc * p + x), n);
    }

    #[test]
    fn violations_empty_iff_pass(v in prop::collection::vec(-20i64..20, 27), p in prime()) {
        let seq: Vec<Rat> = v.into_iter().map(rat).collect();
        let k = match p { 2 => 4, 3 => 3, 5 => 2, _ => 1 };
        let r = dwork_check(&seq, p, k).unwrap();
        prop_assert_eq!(r.violations.is_empty(), r.passes());
        for w in &r.violations {
            prop_assert!(w.lhs != w.rhs && w.n < r.tested);
        }
    }

    #[test]
    fn central_binomials_are_lucas(p in prime()) {
        let seq: Vec<Rat> = (0..49).map(|n| Rat::from_integer(binom(2 * n, n))).collect();
        prop_assert!(dwork_check(&seq, p, 2).unwrap().passes());
    }
}

#[test]
fn identities_and_lucas() {
    for r in identity_suite(40) {
        assert!(r.passes(), "{}: {:?}", r.name, r.failure);
    }
    assert!(lucas_check(2, 81));
    assert!(lucas_check(3, 81));
    assert!(lucas_check(5, 50));
}

/// Pullback solutions are not expected to satisfy the congruence; the
/// verdicts are printed only.
#[test]
fn pullback_verdicts_reported() {
    for id in ["32pb", "hyp5pb"] {
        let op = catalog::operator(id).unwrap();
        let y0 = frobenius(&op, 27).unwrap().y0().coeffs().to_vec();
        for p in [2, 3] {
            match dwork_check(&y0, p, 3 - (p == 3) as u32) {
                Ok(r) => println!("{id} y0: {r}"),
                Err(e) => println!("{id} y0 p={p}: {e}"),
            }
        }
        let w0 = wronskians(&frobenius(&op, 27).unwrap()).unwrap().w0.part(0).into_coeffs();
        match dwork_check(&w0, 3, 3) {
            Ok(r) => println!("{id} w0: {r}"),
            Err(e) => println!("{id} w0: {e}"),
        }
    }
}
