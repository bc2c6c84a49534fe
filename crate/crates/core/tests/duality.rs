use kappa_core::duality::{duality_consistency_suite, Duality, Raising, Route};
use kappa_core::hopfcore::AlgebraElement;
use kappa_core::report::all_passed;
use kappa_core::Coefficient;

fn i() -> Coefficient {
    Coefficient::i()
}

#[test]
fn generator_table() {
    let d = Duality::new();
    let (a, g) = (&d.alg, &d.grp);
    assert_eq!(d.pair(&a.p(1), &g.v_el(1)).unwrap(), i());
    assert!(d.pair(&a.p(1), &g.v_el(2)).unwrap().is_zero());
    assert!(d.pair(&a.m(1, 2), &g.v_el(1)).unwrap().is_zero());
    assert_eq!(d.pair(&a.m(1, 2), &g.lambda_el(1, 2)).unwrap(), i().neg_ref());
    assert_eq!(d.pair(&a.m(2, 1), &g.lambda_el(1, 2)).unwrap(), i());
    // boost: <M_10, L^1_0> = i g_00 = i, <M_10, L^0_1> = -i g_11 = i
    assert_eq!(d.pair(&a.m(1, 0), &g.lambda_el(1, 0)).unwrap(), i());
    assert_eq!(d.pair(&a.m(1, 0), &g.lambda_el(0, 1)).unwrap(), i());
    // A = exp(-P0/k)
    let minus_i_over_k = i().neg_ref().mul_ref(&Coefficient::inv_kappa());
    assert_eq!(d.pair(&a.a(), &g.v_el(0)).unwrap(), minus_i_over_k);
    assert!(d.pair(&a.a(), &g.v_el(1)).unwrap().is_zero());
    assert_eq!(d.pair(&a.a(), &g.lambda_el(2, 2)).unwrap(), Coefficient::one());
    assert!(d.pair(&a.a(), &g.lambda_el(2, 3)).unwrap().is_zero());
    assert_eq!(d.pair(&a.a_inv(), &g.v_el(0)).unwrap(), minus_i_over_k.neg_ref());
}

#[test]
fn worked_product_value() {
    let d = Duality::new();
    let f = AlgebraElement::word(&[d.grp.v(1), d.grp.v(0)]);
    let x = d.alg.p(1);
    let want = Coefficient::inv_kappa();
    assert_eq!(d.pair_route(&x, &f, Route::AlgebraFirst).unwrap(), want);
    assert_eq!(d.pair_route(&x, &f, Route::GroupFirst).unwrap(), want);
    let nf = d.grp.pres.normal_form(&f).unwrap();
    assert_eq!(d.grp.pres.render(&nf), "v[0]*v[1] - (i/k)*v[1]");
    assert_eq!(d.pair(&x, &nf).unwrap(), want);
}

#[test]
fn a_on_powers_of_v0() {
    // <A, (v^0)^n> = (-i/k)^n since A is group-like
    let d = Duality::new();
    let v0 = d.grp.v(0);
    let step = i().neg_ref().mul_ref(&Coefficient::inv_kappa());
    for n in 1..4 {
        let f = AlgebraElement::word(&vec![v0; n]);
        assert_eq!(d.pair(&d.alg.a(), &f).unwrap(), step.pow(n as u32));
    }
}

#[test]
fn consistency_suite_passes() {
    let d = Duality::new();
    let recs = duality_consistency_suite(&d, 3, 50, 11);
    for r in &recs {
        println!("{}", r);
    }
    assert!(all_passed(&recs));
}

#[test]
fn opposite_raising_breaks_consistency() {
    let d = Duality::with_raising(Raising::First);
    let recs = duality_consistency_suite(&d, 3, 50, 11);
    for r in &recs {
        println!("{}", r);
    }
    assert!(!all_passed(&recs));
}
