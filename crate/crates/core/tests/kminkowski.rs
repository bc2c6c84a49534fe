use kappa_core::kalgebra::{build_kalgebra, Kind};
use kappa_core::kminkowski::*;
use kappa_core::report::all_passed;
use kappa_core::Coefficient;
use proptest::prelude::*;

fn x(mu: usize) -> NormalSymbol {
    NormalSymbol::x(mu)
}

fn mono(m: XMono, c: Coefficient) -> NormalSymbol {
    NormalSymbol::monomial(m, c)
}

fn int(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

fn ik() -> Coefficient {
    Coefficient::i().mul_ref(&Coefficient::inv_kappa())
}

fn assert_sym_eq(a: &NormalSymbol, b: &NormalSymbol) {
    let d = a.sub(b).unwrap();
    assert!(d.is_zero(), "{} != {} (difference {})", a, b, d);
}

fn show(recs: &[kappa_core::report::CheckRecord]) {
    for r in recs {
        println!("{}", r);
    }
}

#[test]
fn star_moves_x0_left() {
    // x1 x0 = x0 x1 - (i/k) x1
    let lhs = x(1).star(&x(0)).unwrap();
    let want = mono([1, 1, 0, 0], int(1)).sub(&x(1).scale(&ik())).unwrap();
    assert_sym_eq(&lhs, &want);

    // :x1 x2: * :x0^2: = (x0 - 2i/k)^2 x1 x2
    let lhs = mono([0, 1, 1, 0], int(1)).star(&mono([2, 0, 0, 0], int(1))).unwrap();
    let k2 = Coefficient::kappa().pow(2);
    let want = mono([2, 1, 1, 0], int(1))
        .sub(&mono([1, 1, 1, 0], int(4).mul_ref(&ik())))
        .unwrap()
        .sub(&mono([0, 1, 1, 0], int(4).checked_div(&k2).unwrap()))
        .unwrap();
    assert_sym_eq(&lhs, &want);

    // x0 on the left is already ordered
    assert_sym_eq(&x(0).star(&x(3)).unwrap(), &mono([1, 0, 0, 1], int(1)));
}

#[test]
fn waves_compose() {
    let (p, q) = (Momentum::symbolic(0), Momentum::symbolic(1));
    let prod = NormalSymbol::wave(p.clone()).star(&NormalSymbol::wave(q.clone())).unwrap();
    let c = p.compose(&q).unwrap();
    assert_sym_eq(&prod, &NormalSymbol::wave(c.clone()));
    // (p + q)_j = p_j / E_q + q_j, energies add
    assert_eq!(c.p0, p.p0.add_ref(&q.p0));
    assert_eq!(c.e, p.e.mul_ref(&q.e));
    assert_eq!(c.p[0], p.p[0].checked_div(&q.e).unwrap().add_ref(&q.p[0]));
}

#[test]
fn star_suite_passes() {
    let alg = build_kalgebra();
    let recs = star_suite(&alg, 4, 30, 11);
    show(&recs);
    assert!(all_passed(&recs));
}

#[test]
fn hat_examples() {
    let l = XLowering::Metric;
    let i = Coefficient::i();
    assert_sym_eq(&hat_apply(Kind::P(1), &mono([1, 1, 0, 0], int(1)), l).unwrap(), &x(0).scale(&i));
    assert_sym_eq(&hat_apply(Kind::Boost(1), &x(1), l).unwrap(), &x(0).scale(&i));
    let want = x(0).sub(&NormalSymbol::scalar(ik())).unwrap();
    assert_sym_eq(&hat_apply(Kind::A, &x(0), l).unwrap(), &want);
    // A and A^-1 undo each other
    let f = mono([3, 1, 0, 2], int(2));
    assert_sym_eq(&hat_apply(Kind::AInv, &hat_apply(Kind::A, &f, l).unwrap(), l).unwrap(), &f);
    // P_mu has eigenvalue p_mu on a wave
    let p = Momentum::symbolic(0);
    let w = NormalSymbol::wave(p.clone());
    for mu in 0..4 {
        assert_sym_eq(&hat_apply(Kind::P(mu), &w, l).unwrap(), &w.scale(p.component(mu)));
    }
}

#[test]
fn antirep_holds_with_lowered_coordinates() {
    let alg = build_kalgebra();
    let recs = antirep_suite(&alg, 3, XLowering::Metric);
    show(&recs);
    assert!(all_passed(&recs));
}

#[test]
fn antirep_fails_without_lowering() {
    let alg = build_kalgebra();
    let recs = antirep_suite(&alg, 2, XLowering::Plain);
    show(&recs);
    assert!(!all_passed(&recs));
}

#[test]
fn leibniz_report() {
    let alg = build_kalgebra();
    let recs = leibniz_suite(&alg, 8, 3);
    show(&recs);
    assert!(all_passed(&recs));
    let a = mono([1, 1, 0, 0], int(1));
    let b = mono([1, 0, 2, 0], int(3)).add(&x(3)).unwrap();
    // P0 and the rotations are primitive up to the ideal
    for k in [Kind::P(0), Kind::Rot(1, 2)] {
        let o = leibniz_probe(&alg, alg.gen_of(k), &a, &b, XLowering::Metric).unwrap();
        assert!(o.coproduct && o.opposite, "{:?}", k);
    }
    let o = leibniz_probe(&alg, alg.gen_of(Kind::P(1)), &a, &b, XLowering::Metric).unwrap();
    assert!(o.coproduct);
}

#[test]
fn derivative_examples() {
    let two = int(2);
    let d0 = deformed_derivative(Deriv::D0, &mono([2, 0, 0, 0], int(1))).unwrap();
    assert_sym_eq(&d0, &x(0).scale(&two));
    let d1 = deformed_derivative(Deriv::D(1), &mono([1, 1, 0, 0], int(1))).unwrap();
    assert_sym_eq(&d1, &x(0).add(&NormalSymbol::scalar(ik())).unwrap());
    // on a wave: d_i has eigenvalue -i p_i E
    let p = Momentum::symbolic(0);
    let w = NormalSymbol::wave(p.clone());
    let di = deformed_derivative(Deriv::D(2), &w).unwrap();
    assert_sym_eq(&di, &w.scale(&Coefficient::i().neg_ref().mul_ref(&p.p[1]).mul_ref(&p.e)));
}

#[test]
fn box_eigenvalue_on_a_wave() {
    // (k^2/4)(1 - (E + 1/E)/2) + E |p|^2 / 8, written out by hand
    let p = Momentum::symbolic(1);
    let w = NormalSymbol::wave(p.clone());
    let k2 = Coefficient::kappa().pow(2);
    let e = p.e.clone();
    let cos = e.add_ref(&e.inv().unwrap()).mul_ref(&Coefficient::from_ratio(1, 2));
    let psq = p.p.iter().fold(Coefficient::zero(), |a, c| a.add_ref(&c.pow(2)));
    let want = k2
        .mul_ref(&Coefficient::from_ratio(1, 4))
        .mul_ref(&Coefficient::one().sub_ref(&cos))
        .add_ref(&e.mul_ref(&psq).mul_ref(&Coefficient::from_ratio(1, 8)));
    assert_sym_eq(&deformed_derivative(Deriv::Box, &w).unwrap(), &w.scale(&want));
}

#[test]
fn kg_suite_passes() {
    let recs = kg_suite(4);
    show(&recs);
    assert!(all_passed(&recs));
}

#[test]
fn deformed_d0_reading_leaves_a_residual() {
    // With sinh^2(x) = x^2 + x^4/3 + ..., the second-order form gives
    // -m^4/(12 k^2) and the factored form -5 m^4/(12 k^2) at rest.
    let r = deformed_reading_residual(5, 4).unwrap();
    let m4 = Coefficient::mass().pow(4);
    assert_eq!(r.first().map(|t| t.0), Some(2));
    assert_eq!(r[0].1, m4.mul_ref(&Coefficient::from_ratio(1, 3)));
}

#[test]
fn extraction_matches_induced_rep() {
    let alg = build_kalgebra();
    let recs = extract_compare_suite(&alg);
    show(&recs);
    assert!(all_passed(&recs));
}

fn small_poly() -> impl Strategy<Value = NormalSymbol> {
    prop::collection::vec((0u32..3, 0u32..2, 0u32..2, 0u32..2, -4i64..5), 1..4).prop_map(|ts| {
        let mut s = NormalSymbol::zero();
        for (a, b, c, d, k) in ts {
            s = s.add(&mono([a, b, c, d], int(k))).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn star_is_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
        let l = a.star(&b).unwrap().star(&c).unwrap();
        let r = a.star(&b.star(&c).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().is_zero());
    }

    #[test]
    fn shift_is_a_star_automorphism(a in small_poly(), b in small_poly(), n in -2i64..3) {
        let l = a.star(&b).unwrap().shift_x0(n);
        let r = a.shift_x0(n).star(&b.shift_x0(n)).unwrap();
        prop_assert!(l.sub(&r).unwrap().is_zero());
    }
}
