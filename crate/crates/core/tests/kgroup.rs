use kappa_core::hopfcore::{AlgebraElement, Word};
use kappa_core::kgroup::{build_kgroup, kgroup_verify, kgroup_verify_corrupt};
use kappa_core::report::all_passed;
use kappa_core::scalars::Coefficient;

#[test]
fn v1_v0_reorders_with_one_rewrite() {
    let k = build_kgroup();
    let p = &k.pres;
    let nf = p.normal_form(&AlgebraElement::word(&[k.v(1), k.v(0)])).unwrap();
    assert_eq!(p.render(&nf), "v[0]*v[1] - (i/k)*v[1]");
    let ordered = AlgebraElement::word(&[k.v(0), k.v(1)]);
    assert_eq!(p.normal_form(&ordered).unwrap(), ordered);
}

#[test]
fn bilinear_product() {
    let k = build_kgroup();
    let p = &k.pres;
    let a = k.v_el(0).add(&k.v_el(1));
    let r = p.multiply(&a, &k.v_el(0)).unwrap();
    assert_eq!(p.render(&r), "v[0]^2 + v[0]*v[1] - (i/k)*v[1]");
}

#[test]
fn brackets_reproduce_the_relations() {
    let k = build_kgroup();
    let p = &k.pres;
    let c = p.commutator(&k.lambda_el(1, 2), &k.lambda_el(0, 3)).unwrap();
    assert!(c.is_zero());
    let c = p.commutator(&k.v_el(0), &k.v_el(1)).unwrap();
    assert_eq!(p.render(&c), "(i/k)*v[1]");
    // [L^0_0, v^0] = -(i/k)(L^0_0 - 1)(L^0_0 + 1)
    let c = p.commutator(&k.lambda_el(0, 0), &k.v_el(0)).unwrap();
    let l00 = k.lambda_el(0, 0);
    let one = AlgebraElement::one();
    let expected = p
        .multiply(&l00.sub(&one), &l00.add(&one))
        .unwrap()
        .scale(&Coefficient::i().mul_ref(&Coefficient::inv_kappa()).neg_ref());
    assert_eq!(c, expected);
}

#[test]
fn structure_maps_on_generators() {
    let k = build_kgroup();
    let p = &k.pres;
    let d = p.coproduct(&k.v_el(1)).unwrap();
    assert_eq!(
        p.render_tensor(&d),
        "[L[1,0] (x) v[0]] + [L[1,1] (x) v[1]] + [L[1,2] (x) v[2]] + [L[1,3] (x) v[3]] + [v[1] (x) 1]"
    );
    assert_eq!(p.render_tensor(&p.coproduct(&AlgebraElement::one()).unwrap()), "[1 (x) 1]");
    // S(v^1) = -L_nu^1 v^nu = L^0_1 v^0 - L^1_1 v^1 - L^2_1 v^2 - L^3_1 v^3
    let s = p.antipode(&k.v_el(1)).unwrap();
    assert_eq!(p.render(&s), "L[0,1]*v[0] - L[1,1]*v[1] - L[2,1]*v[2] - L[3,1]*v[3]");
    assert!(p.antipode(&AlgebraElement::one()).unwrap() == AlgebraElement::one());
    assert!(p.counit(&k.lambda_el(1, 1)).unwrap().is_one());
    assert!(p.counit(&k.lambda_el(1, 2)).unwrap().is_zero());
    assert!(p.counit(&AlgebraElement::word(&[k.v(1), k.v(2)])).unwrap().is_zero());
    assert!(p.counit(&AlgebraElement::one()).unwrap().is_one());
}

#[test]
fn antipode_law_on_v_cancels_exactly() {
    let k = build_kgroup();
    let p = &k.pres;
    for mu in 0..4 {
        let d = p.coproduct(&k.v_el(mu)).unwrap();
        assert!(p.antipode_multiply(&d, true).unwrap().is_zero());
    }
}

#[test]
fn antipode_law_on_lambda_needs_orthogonality() {
    let k = build_kgroup();
    let p = &k.pres;
    let d = p.coproduct(&k.lambda_el(1, 1)).unwrap();
    let r = p.antipode_multiply(&d, true).unwrap().sub(&AlgebraElement::one());
    assert!(!r.is_zero());
    assert!(p.element_vanishes(&r));
    // a residual that is not in the ideal
    let bogus = AlgebraElement::term(Coefficient::one(), Word::single(k.lambda(1, 2)));
    assert!(!p.element_vanishes(&bogus));
}

#[test]
fn group_suite_passes() {
    let t = std::time::Instant::now();
    let recs = kgroup_verify(3, 50, 7);
    for r in &recs {
        println!("{}", r);
    }
    assert!(all_passed(&recs));
    println!("elapsed {:?}", t.elapsed());
}

#[test]
fn all_plus_metric_breaks_the_antipode() {
    let recs = kgroup_verify_corrupt(2, 5, 7);
    assert!(recs.iter().any(|r| !r.passed() && r.name.contains("antipode")));
}
