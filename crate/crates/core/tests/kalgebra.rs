use kappa_core::hopfcore::AlgebraElement;
use kappa_core::kalgebra::{
    build_kalgebra, build_kalgebra_with, classical_limit_suite, jacobi_suite, kalgebra_hopf_verify, BoostAntipode,
    KAlgebraOptions, Kind, MomentumSquare,
};
use kappa_core::report::all_passed;

fn show(recs: &[kappa_core::report::CheckRecord]) {
    for r in recs {
        println!("{}", r);
    }
}

#[test]
fn bracket_examples() {
    let k = build_kalgebra();
    let p = &k.pres;
    let c = p.commutator(&k.m(1, 2), &k.p(1)).unwrap();
    assert_eq!(p.render(&c), "i*P[2]");
    let c = p.commutator(&k.m(1, 0), &k.p(0)).unwrap();
    assert_eq!(p.render(&c), "i*P[1]");
    let c = p.commutator(&k.m(1, 0), &k.a()).unwrap();
    assert_eq!(p.render(&c), "-(i/k)*P[1]*A");
    assert_eq!(p.render(&p.multiply(&k.a(), &k.a_inv()).unwrap()), "1");
    assert_eq!(p.render(&p.multiply(&k.a_inv(), &k.a()).unwrap()), "1");
    assert_eq!(p.multiply(&k.p(1), &k.a()).unwrap(), p.multiply(&k.a(), &k.p(1)).unwrap());
    assert_eq!(p.render(&p.multiply(&k.a_inv(), &k.a_inv()).unwrap()), "A^-2");
}

#[test]
fn structure_map_examples() {
    let k = build_kalgebra();
    let p = &k.pres;
    assert_eq!(p.render_tensor(&p.coproduct(&k.p(0)).unwrap()), "[1 (x) P[0]] + [P[0] (x) 1]");
    assert_eq!(p.render(&p.antipode(&k.p(0)).unwrap()), "-P[0]");
    assert_eq!(p.render(&p.antipode(&k.p(1)).unwrap()), "-P[1]*A^-1");
    let boost = p.coproduct(&k.m(1, 0)).unwrap();
    assert_eq!(
        p.render_tensor(&boost),
        "(1/k)*[M[1,2] (x) P[2]] + (1/k)*[M[1,3] (x) P[3]] + [M[1,0] (x) A] + [1 (x) M[1,0]]"
    );
}

#[test]
fn sector_invariants() {
    let k = build_kalgebra();
    let p = &k.pres;
    for mu in 0..4 {
        assert!(p.commutator(&k.a(), &k.p(mu)).unwrap().is_zero());
    }
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        assert!(p.commutator(&k.a(), &k.m(i, j)).unwrap().is_zero());
    }
    // momentum + A sector is closed under the coproduct
    for g in [Kind::P(0), Kind::P(2), Kind::A] {
        let d = p.coproduct(&AlgebraElement::gen(k.gen_of(g))).unwrap();
        for (slots, _) in d.terms() {
            for w in slots {
                for &x in w.gens() {
                    assert!(matches!(k.kind(x), Kind::P(_) | Kind::A | Kind::AInv));
                }
            }
        }
    }
}

#[test]
fn jacobi_holds_with_minkowski_square() {
    let k = build_kalgebra();
    let recs = jacobi_suite(&k);
    show(&recs);
    assert!(all_passed(&recs));
    assert!(recs[0].name.contains("[165 cases]"));
}

#[test]
fn jacobi_breaks_with_euclidean_square() {
    let k = build_kalgebra_with(KAlgebraOptions {
        momentum_square: MomentumSquare::Euclidean,
        ..KAlgebraOptions::default()
    });
    let recs = jacobi_suite(&k);
    show(&recs);
    assert!(!all_passed(&recs));
}

#[test]
fn algebra_hopf_suite_passes() {
    let t = std::time::Instant::now();
    let k = build_kalgebra();
    let recs = kalgebra_hopf_verify(&k, 3, 50, 7);
    show(&recs);
    assert!(all_passed(&recs));
    println!("elapsed {:?}", t.elapsed());
}

#[test]
fn printed_boost_antipode_leaves_a_residual() {
    let k = build_kalgebra_with(KAlgebraOptions {
        boost_antipode: BoostAntipode::LeftInverse,
        ..KAlgebraOptions::default()
    });
    let p = &k.pres;
    let d = p.coproduct(&k.m(1, 0)).unwrap();
    let r = p.antipode_multiply(&d, true).unwrap();
    assert_eq!(p.render(&r), "(i/k)*P[1]");
}

#[test]
fn classical_limit() {
    let k = build_kalgebra();
    let recs = classical_limit_suite(&k, 4);
    show(&recs);
    assert!(all_passed(&recs));
}
