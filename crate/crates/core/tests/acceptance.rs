//! End-to-end acceptance checks, one line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are computed in full and reported as
//! FAIL; the run aborts if one of them unexpectedly passes or if any other
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use cyeq::catalog;
use cyeq::congruence::{dwork_check, identity_suite, lucas_check};
use cyeq::exact::{rat, Poly, PowerSeries, Rat};
use cyeq::fit::{fit, FitSpec};
use cyeq::frobenius::{frobenius, instantons, integrality_report, lambert_sum, yukawa};
use cyeq::laurent::{ct_eliminated, ct_power, ct_sequence, job_325, polygon_2d, seq325};
use cyeq::pullback::{double_wronskian_check, pullback_factor, verify_pullback_pair};
use cyeq::sequences::{self, formulas, EmptySumFamily};
use cyeq::{Error, Recurrence, ThetaOperator};

/// Criteria whose literal statement does not hold for the printed data.
const KNOWN_FAILURES: &[usize] = &[3, 4, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn op(expr: &str) -> ThetaOperator {
    ThetaOperator::parse_expr(expr).expect("operator parses")
}

fn ints(v: Vec<num_bigint::BigInt>) -> Vec<Rat> {
    v.into_iter().map(Rat::from_integer).collect()
}

/// True if the two recurrences agree up to a nonzero overall scalar.
fn proportional(a: &Recurrence, b: &Recurrence) -> bool {
    if a.coeffs().len() != b.coeffs().len() {
        return false;
    }
    let Some((pa, pb)) = a.coeffs().iter().zip(b.coeffs()).find(|(p, _)| !p.is_zero()) else {
        return false;
    };
    if pb.is_zero() {
        return false;
    }
    let s = pb.leading() / pa.leading();
    a.coeffs().iter().zip(b.coeffs()).all(|(p, q)| &p.scale(&s) == q)
}

fn c1_eta_round_trip() -> Outcome {
    let seq: Vec<Rat> = (0..70).map(formulas::eta_original).collect();
    let expected = op("θ^3 − x(2θ+1)(11θ^2+11θ+5) + 125x^2(θ+1)^3");
    let fitted = fit(&seq, &FitSpec::new(3, 2)).ok().and_then(|r| r.operator);
    let forms = (0..=60).all(|n| {
        let e = formulas::eta_original(n);
        e == formulas::eta_short(n) && e == formulas::eta_integral(n)
    });
    let fit_ok = fitted.as_ref() == Some(&expected);
    outcome(fit_ok && forms, format!("fit matches printed: {fit_ok}; three forms agree n<=60: {forms}"))
}

fn c2_recurrence_15() -> Outcome {
    let seq = sequences::generate("15", 40).unwrap();
    let Some(fitted) = fit(&seq, &FitSpec::new(4, 2)).unwrap().operator else {
        return outcome(false, "no fourth order operator of degree 2");
    };
    let n = |c: &[i64]| Poly::from_ints(c);
    let np1 = n(&[1, 1]);
    let quad = &(&np1 * &np1).scale(&rat(7)) + &(&np1.scale(&rat(7)) + &n(&[2]));
    let printed = Recurrence::new(vec![
        n(&[2, 1]).pow(4),
        (&(&n(&[4, 3]) * &n(&[5, 3])) * &quad).scale(&rat(-3)),
        (&(&n(&[1, 3]) * &n(&[2, 3])) * &(&n(&[4, 3]) * &n(&[5, 3]))).scale(&rat(-72)),
    ])
    .unwrap();
    let ok = proportional(&fitted.to_recurrence(), &printed);
    outcome(ok, format!("fitted recurrence proportional to printed: {ok}"))
}

fn c3_mirror_at_infinity() -> Outcome {
    let m193 = catalog::operator("193").unwrap().mirror_at_infinity(&rat(-1), &rat(1)).unwrap();
    let printed198 = catalog::operator("198-printed").unwrap();
    let rows_193 = m193 == printed198;
    let differing: Vec<usize> = (0..=m193.degree()).filter(|&i| m193.row(i) != printed198.row(i)).collect();
    let bessel = catalog::operator("bessel-raw").unwrap().mirror_at_infinity(&rat(900), &rat(1)).unwrap();
    let rows_34 = bessel == catalog::operator("34").unwrap();
    let seq198 = sequences::generate("198", 40).unwrap();
    outcome(
        rows_193 && rows_34,
        format!(
            "193 -> printed 198: {rows_193} (rows differing: {differing:?}; transformed operator annihilates the 198 sum: {}); bessel a=900 -> printed 34: {rows_34}",
            m193.annihilates(&seq198)
        ),
    )
}

fn c4_pullback_pairs() -> Outcome {
    let pairs = [("32pb", "zud5"), ("hyp5pb-printed", "hyp5")];
    let mut pass = true;
    let mut detail = Vec::new();
    for (four, five) in pairs {
        let (o4, o5) = (catalog::operator(four).unwrap(), catalog::operator(five).unwrap());
        let literal = verify_pullback_pair(&o4, &o5, 25);
        let gauge = pullback_factor(&o4, &o5, 25);
        let ok = matches!(literal, Ok(true));
        pass &= ok;
        let gauge = match gauge {
            Ok(Some(f)) => format!("equal up to factor 1{:+}x+...", f.coeff(1)),
            Ok(None) => "not equivalent".to_string(),
            Err(e) => e.to_string(),
        };
        detail.push(format!("{four}/{five}: literal {literal:?}, {gauge}"));
    }
    let o4 = catalog::operator("hyp5pb").unwrap();
    let corrected = pullback_factor(&o4, &catalog::operator("hyp5").unwrap(), 25);
    detail.push(format!("hyp5pb with (4θ+5): equivalent {}", matches!(corrected, Ok(Some(_)))));
    outcome(pass, detail.join("; "))
}

fn c5_constant_terms() -> Outcome {
    let s = polygon_2d();
    let seq = ints(ct_sequence(&s, 60));
    let head = seq[..9] == [1, 0, 0, 0, 12, 60, 0, 0, 420].map(rat);
    let shown: Vec<String> = seq[..9].iter().map(|a| a.to_string()).collect();
    let fitted = fit(&seq, &FitSpec::new(2, 11)).ok().and_then(|r| r.operator);
    let poly_ok = fitted.as_ref() == Some(&catalog::operator("poly2d").unwrap());
    let job = job_325();
    let elim = (0..=8).all(|n| ct_eliminated(&job, n).unwrap() == ct_power(&job.s, 2 * n));
    let terms = seq325(15);
    let printed = catalog::operator("325-printed").unwrap().first_defect(&terms);
    let corrected = catalog::operator("325").unwrap().first_defect(&terms);
    outcome(
        head && poly_ok && elim && printed.is_none(),
        format!(
            "poly2d head 1+12x^4+60x^5+420x^8: {head} (computed {}); fitted = printed: {poly_ok}; eliminated = direct n<=8: {elim}; \
             printed 325 first defect: {printed:?}; corrected 325 first defect: {corrected:?}",
            shown.join(",")
        ),
    )
}

fn c6_hadamard() -> Outcome {
    let h = sequences::generate("133", 41).unwrap();
    let printed = op("θ^4 − 12x(2θ+1)^2(3θ^2+3θ+1) + 432x^2(2θ+1)^2(2θ+3)^2");
    let ann = printed.annihilates(&h);
    let fam = EmptySumFamily::row("133").unwrap();
    let rows = h.iter().enumerate().all(|(n, a)| *a == sequences::empty_sum_eval(&fam, n).unwrap());
    outcome(ann && rows, format!("annihilated to order 40: {ann}; equals empty-sum row n<=40: {rows}"))
}

fn c7_conditions() -> Outcome {
    let mut bad = Vec::new();
    for id in ["14", "193", "198", "34", "133", "325", "366"] {
        let o = catalog::operator(id).unwrap();
        if !o.is_mum() || !o.cond2().unwrap_or(false) {
            bad.push(id);
        }
    }
    let c25 = catalog::operator("zud5").unwrap().cond2_5().unwrap_or(false);
    outcome(bad.is_empty() && c25, format!("mum and cond2 failures: {bad:?}; cond2_5 zud5: {c25}"))
}

fn c8_integrality() -> Outcome {
    let mut bad = Vec::new();
    for id in ["14", "c*eta", "b*eta", "133", "193"] {
        let o = catalog::operator(id).unwrap();
        let a = integrality_report(&o, 40, 1).unwrap().a;
        let b = integrality_report(&o, 30, 1).unwrap().b;
        if a != Some(true) || b != Some(true) {
            bad.push(id);
        }
    }
    let basis = frobenius(&catalog::operator("14").unwrap(), 12).unwrap();
    let k = yukawa(&basis).unwrap();
    let inst = instantons(&k, 8).unwrap();
    let lambert = lambert_sum(&inst.n, 9) == k.truncate(9);
    let shown: Vec<String> = inst.n.iter().map(|v| v.to_string()).collect();
    outcome(
        bad.is_empty() && lambert && inst.n0.is_some(),
        format!(
            "3a/3b failures: {bad:?}; Lambert consistent: {lambert}; N0 = {:?}; n_1..n_8 = {}",
            inst.n0,
            shown.join(",")
        ),
    )
}

fn c9_dwork() -> Outcome {
    let mut bad = Vec::new();
    for id in ["eta", "15", "22", "34", "133", "193", "198", "366", "325", "poly2d"] {
        let seq = match id {
            "325" | "366" => catalog::operator(id).unwrap().series_solution(125).unwrap(),
            _ => sequences::generate(id, 125).unwrap(),
        };
        for p in [2, 3, 5] {
            match dwork_check(&seq, p, 3) {
                Ok(r) if r.passes() => {}
                Ok(r) => bad.push(format!("{id}: {r}")),
                Err(e) => bad.push(format!("{id} p={p}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("failures: {bad:?}"))
}

fn c10_identities() -> Outcome {
    let suite = identity_suite(40);
    let failing: Vec<_> = suite.iter().filter(|r| !r.passes()).map(|r| (r.name, r.failure)).collect();
    let lucas = lucas_check(2, 81) && lucas_check(3, 81);
    outcome(failing.is_empty() && lucas, format!("identity failures: {failing:?}; Lucas: {lucas}"))
}

fn c11_property_suites() -> Outcome {
    let sym = (0..40).all(|n| [3, 5, 7, 9].iter().all(|&e| formulas::symmetric_zero(n, e) == rat(0)));
    let f = PowerSeries::from_ints(&[0, 1, 3, -2, 7, 1, 0, 5], 20);
    let rev = f.revert().unwrap().compose(&f).unwrap() == PowerSeries::x(20);
    let g = PowerSeries::from_ints(&[0, 2, -1, 4], 20);
    let explog = g.exp().unwrap().log().unwrap() == g;
    let mut rec = true;
    let mut wr = true;
    let mut dw = true;
    let mut checked = 0;
    for e in catalog::entries().unwrap() {
        let Some(o) = e.operator else { continue };
        rec &= ThetaOperator::from_recurrence(&o.to_recurrence()) == o;
        if o.order() != 4 || !o.is_mum() {
            continue;
        }
        let basis = frobenius(&o, 30).unwrap();
        if basis.wronskian_condition(30).unwrap() {
            wr &= o.cond2().unwrap();
        }
        match double_wronskian_check(&basis, &o, 30) {
            Ok(v) => {
                dw &= v;
                checked += 1;
            }
            Err(Error::NotCheckable(_)) => {}
            Err(_) => dw = false,
        }
    }
    outcome(
        sym && rev && explog && rec && wr && dw,
        format!(
            "symmetric sums vanish: {sym}; reversion: {rev}; exp/log: {explog}; recurrence round trip: {rec}; \
             wronskian condition => cond2: {wr}; double wronskian N=30 on {checked} operators: {dw}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("eta round trip", c1_eta_round_trip),
        ("recurrence of #15", c2_recurrence_15),
        ("mirror at infinity", c3_mirror_at_infinity),
        ("pullback pairs", c4_pullback_pairs),
        ("constant terms", c5_constant_terms),
        ("hadamard #133", c6_hadamard),
        ("condition suite", c7_conditions),
        ("integrality", c8_integrality),
        ("dwork congruences", c9_dwork),
        ("binomial identities and Lucas", c10_identities),
        ("property suites", c11_property_suites),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let k = i + 1;
        let t = Instant::now();
        let o = check();
        let known = KNOWN_FAILURES.contains(&k);
        let tag = match (o.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (listed as known failure)",
        };
        if o.pass == known {
            unexpected += 1;
        }
        println!("criterion {k:>2} {tag}: {name} [{:.1?}] {}", t.elapsed(), o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the expected outcome");
        ExitCode::FAILURE
    }
}
