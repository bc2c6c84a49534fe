use kappa_core::indrep::*;
use kappa_core::kalgebra::Kind;
use kappa_core::report::all_passed;
use kappa_core::{Coefficient, Var};
use proptest::prelude::*;

fn q(i: usize) -> Coefficient {
    if i == 0 {
        Coefficient::var(Var::Q0)
    } else {
        Coefficient::var(Var::q(i))
    }
}

fn show(recs: &[kappa_core::report::CheckRecord]) {
    for r in recs {
        println!("{}", r);
    }
}

#[test]
fn qderive_examples() {
    assert_eq!(qderive(&q(0), 1), q(1).checked_div(&q(0)).unwrap());
    assert_eq!(qderive(&q(1), 1), Coefficient::one());
    // d/dq1 1/(q0+m) = -q1 / (q0 (q0+m)^2)
    let m = Coefficient::mass();
    let f = Coefficient::one().checked_div(&q(0).add_ref(&m)).unwrap();
    let want = q(1).neg_ref().checked_div(&q(0).mul_ref(&q(0).add_ref(&m).pow(2))).unwrap();
    assert_eq!(qderive(&f, 1), want);
    // the shell relation differentiates to zero
    let shell = q(0).mul_ref(&q(0)).sub_ref(&q(1).mul_ref(&q(1))).sub_ref(&q(2).mul_ref(&q(2)));
    for i in 1..4 {
        let d = qderive(&shell, i);
        let want = if i == 3 { q(3).mul_ref(&Coefficient::from_int(2)) } else { Coefficient::zero() };
        assert_eq!(d, want);
    }
}

#[test]
fn generator_shapes() {
    let rep = InducedRep::new(Spin::Zero);
    let m12 = rep.of_kind(Kind::Rot(1, 2));
    let i = Coefficient::i();
    // i(q1 d/dq^2 - q2 d/dq^1) with d/dq^j = -D_j
    assert_eq!(m12.field[1], i.mul_ref(&q(1)).neg_ref());
    assert_eq!(m12.field[0], i.mul_ref(&q(2)));
    assert!(m12.mult.is_zero());

    let p1 = rep.of_kind(Kind::P(1));
    let u = Coefficient::mass().mul_ref(&Coefficient::cosh()).sub_ref(&q(0).mul_ref(&Coefficient::sinh()));
    let want = Coefficient::kappa().mul_ref(&Coefficient::sinh()).mul_ref(&q(1)).neg_ref().checked_div(&u).unwrap();
    assert_eq!(p1.mult.get(0, 0), &want);

    // spin 1/2: M_10 carries eps_1jk q_j s_k/(q0+m) = (q2 s3 - q3 s2)/(q0+m)
    let rep = InducedRep::new(Spin::Half);
    let m10 = rep.of_kind(Kind::Boost(1));
    let sm = SpinMatrices::new(Spin::Half);
    let w = Coefficient::one().checked_div(&q(0).add_ref(&Coefficient::mass())).unwrap();
    let want = sm.get(3).scale(&q(2).mul_ref(&w)).sub(&sm.get(2).scale(&q(3).mul_ref(&w)));
    assert_eq!(m10.mult, want);
}

#[test]
fn commutator_examples() {
    let rep = InducedRep::new(Spin::Zero);
    let i = Coefficient::i();
    let c = diffop_commutator(rep.of_kind(Kind::P(0)), rep.of_kind(Kind::P(1))).unwrap();
    assert!(c.is_zero());
    let c = diffop_commutator(rep.of_kind(Kind::Boost(1)), rep.of_kind(Kind::P(0))).unwrap();
    assert_eq!(c, rep.of_kind(Kind::P(1)).scale(&i));
    let c = diffop_commutator(rep.of_kind(Kind::Rot(1, 2)), rep.of_kind(Kind::Rot(2, 3))).unwrap();
    assert_eq!(c, rep.of_kind(Kind::Rot(1, 3)).scale(&i.neg_ref()));
}

#[test]
fn log_squared_is_rejected() {
    let rep = InducedRep::new(Spin::Zero);
    let p0 = rep.of_kind(Kind::P(0));
    assert_eq!(p0.mult.mul(&p0.mult), Err(IndRepError::LogSquared));
}

#[test]
fn closure_at_every_spin() {
    for spin in [Spin::Zero, Spin::Half, Spin::One] {
        let recs = closure_suite(&InducedRep::new(spin));
        show(&recs);
        assert!(all_passed(&recs), "spin {}", spin.label());
    }
}

#[test]
fn flipped_orbital_sign_fails() {
    let conv = RepConvention { orbital: OrbitalSign::Flipped, ..Default::default() };
    let recs = closure_suite(&InducedRep::with_convention(Spin::Zero, conv));
    show(&recs);
    assert!(!all_passed(&recs));
}

#[test]
fn exp_realized_as_u_over_m_fails() {
    let conv = RepConvention { exp: ExpRealization::UOverM, ..Default::default() };
    let recs = closure_suite(&InducedRep::with_convention(Spin::Zero, conv));
    assert!(!all_passed(&recs));
    assert!(recs[0].residual.as_deref().unwrap().starts_with("[M[1,0], P[1]]"));
}

#[test]
fn shell_suite_passes() {
    let recs = momentum_shell_suite(4);
    show(&recs);
    assert!(all_passed(&recs));
}

#[test]
fn shell_preservation_by_brute_expansion() {
    // oracle: clear the denominator by hand and compare numerators
    // (m q0 c - m^2 s)^2 - m^2 q^2 = m^2 (q0 s - m c)^2 modulo the shell
    let (m, ch, sh) = (Coefficient::mass(), Coefficient::cosh(), Coefficient::sinh());
    let a = m.mul_ref(&q(0)).mul_ref(&ch).sub_ref(&m.mul_ref(&m).mul_ref(&sh));
    let qq = (1..4).fold(Coefficient::zero(), |acc, k| acc.add_ref(&q(k).mul_ref(&q(k))));
    let lhs = a.mul_ref(&a).sub_ref(&m.mul_ref(&m).mul_ref(&qq));
    let b = q(0).mul_ref(&sh).sub_ref(&m.mul_ref(&ch));
    assert_eq!(lhs, m.mul_ref(&m).mul_ref(&b).mul_ref(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Leibniz rule of the shell derivative on random polynomials
    #[test]
    fn qderive_is_a_derivation(a in 0u32..3, b in 0u32..3, c in 0u32..2, i in 1usize..4) {
        let f = q(1).pow(a).add_ref(&q(0).mul_ref(&q(2).pow(b)));
        let g = q(3).pow(c).add_ref(&Coefficient::var(Var::LOG)).add_ref(&q(0));
        let lhs = qderive(&f.mul_ref(&g), i);
        let rhs = qderive(&f, i).mul_ref(&g).add_ref(&f.mul_ref(&qderive(&g, i)));
        prop_assert_eq!(lhs, rhs);
    }
}
