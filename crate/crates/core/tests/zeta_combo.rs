use proptest::prelude::*;
use renewal_zeta::combo::*;
use renewal_zeta::scalar::rat;
use renewal_zeta::{Precision, ZetaCombo};

fn prec() -> Precision {
    Precision::new(1e-13, 50_000_000).unwrap()
}

/// `Σ_{j≥1} 2/(j^k (j+1)(j+2))` summed directly to a large cutoff in the test.
fn uk_brute(k: u32, terms: u64) -> f64 {
    (1..=terms).rev().map(|j| 2.0 / ((j as f64).powi(k as i32) * (j + 1) as f64 * (j + 2) as f64)).sum()
}

#[test]
fn first_values() {
    assert_eq!(uk_recursion(0), ZetaCombo::constant(rat(1, 1)));
    assert_eq!(uk_recursion(1), ZetaCombo::constant(rat(1, 2)));
    assert_eq!(uk_recursion(2), ZetaCombo::from_parts(rat(-5, 4), [(2, rat(1, 1))]).unwrap());
    assert_eq!(
        uk_recursion(3),
        ZetaCombo::from_parts(rat(13, 8), [(2, rat(-3, 2)), (3, rat(1, 1))]).unwrap()
    );
    assert_eq!(uk_closed(2), uk_recursion(2));
    let v = uk_closed(2).eval().unwrap();
    assert!((v.value - 0.394_934_066_848_226_4).abs() < 1e-15);
    assert_eq!(ZetaCombo::zero().eval().unwrap().value, 0.0);
    assert_eq!(ZetaCombo::zero().eval().unwrap().bound, 0.0);
}

#[test]
fn recursion_equals_closed_form() {
    for (k, r) in uk_recursion_all(30).iter().enumerate() {
        assert_eq!(*r, uk_closed(k as u32), "k={k}");
    }
}

#[test]
fn three_term_relation() {
    let u = uk_recursion_all(30);
    for k in 2..=30usize {
        let lhs = u[k].scale(&rat(2, 1)) + u[k - 1].scale(&rat(3, 1)) + u[k - 2].clone();
        let rhs = ZetaCombo::term(k as u32, rat(2, 1)).unwrap();
        assert_eq!(lhs, rhs, "k={k}");
    }
}

#[test]
fn series_matches_exact() {
    let p = prec();
    for k in 0..=20u32 {
        let ex = uk_closed(k).eval().unwrap();
        let s = uk_series(k, &p);
        assert!((ex.value - s.value).abs() <= ex.bound + s.bound + 1e-15, "k={k}: {ex:?} {s:?}");
    }
    assert!((uk_series(0, &p).value - 1.0).abs() < 1e-12);
    assert!((uk_series(1, &p).value - 0.5).abs() < 1e-12);
    let s20 = uk_series(20, &p);
    assert!((s20.value - uk_brute(20, 1000)).abs() < 1e-15);
    assert!((s20.value - 0.333_333_492).abs() < 1e-9);
}

#[test]
fn decreasing_and_above_one_third() {
    let p = prec();
    let v: Vec<_> = (0..=31u32).map(|k| uk_series(k, &p)).collect();
    for k in 0..=20 {
        assert!(v[k + 1].value + v[k + 1].bound < v[k].value - v[k].bound, "k={k}");
    }
    for (k, x) in v.iter().enumerate().skip(1) {
        assert!(x.value - x.bound > 1.0 / 3.0, "k={k}");
    }
}

#[test]
fn generating_function() {
    assert!((uk_genfun(0.0).unwrap().value - 1.0).abs() < 1e-15);
    let h = 1e-5;
    let d = (uk_genfun(h).unwrap().value - uk_genfun(-h).unwrap().value) / (2.0 * h);
    assert!((d - 0.5).abs() < 1e-8);
    let p = prec();
    let mut s = 0.0;
    for k in 0..=80u32 {
        s += uk_series(k, &p).value * 0.5f64.powi(k as i32);
    }
    let tail = 0.5f64.powi(80);
    assert!((uk_genfun(0.5).unwrap().value - s).abs() < tail + 1e-13);
}

#[test]
fn display_and_summary() {
    assert_eq!(uk_closed(3).to_string(), "13/8 - 3/2·ζ(2) + ζ(3)");
    assert_eq!(combo_summary(&uk_closed(2)), "zeta(2) - 5/4");
    assert_eq!(combo_summary(&uk_closed(3)), "-3/2*zeta(2) + zeta(3) + 13/8");
}

fn arb_combo() -> impl Strategy<Value = ZetaCombo> {
    (
        (-20i64..20, 1i64..9),
        proptest::collection::vec((2u32..8, -20i64..20, 1i64..9), 0..4),
    )
        .prop_map(|((p, q), ts)| ZetaCombo::from_parts(rat(p, q), ts.into_iter().map(|(j, a, b)| (j, rat(a, b)))).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_combo(), b in arb_combo()) {
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn eval_is_linear(a in arb_combo(), b in arb_combo()) {
        let s = (a.clone() + b.clone()).eval().unwrap();
        let x = a.eval().unwrap();
        let y = b.eval().unwrap();
        prop_assert!((s.value - x.value - y.value).abs() <= s.bound + x.bound + y.bound + 1e-13 * (1.0 + x.value.abs() + y.value.abs()));
    }
}
