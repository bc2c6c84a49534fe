//! kappa-Minkowski space: normal-ordered symbols, star products, the action
//! of the algebra, deformed derivatives and the Klein-Gordon operator.
//!
//! Plane waves are `:exp(-i(p0 x0 + p_j x^j)):`, so `P_mu^` has eigenvalue
//! `p_mu`. Wave packets are handled one mode at a time.

mod extract;
mod hat;
mod kg;
mod symbol;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use extract::{extract_compare_suite, momentum_extract};
pub use hat::{
    antirep_suite, hat_apply, hat_element, hat_word, leibniz_probe, leibniz_suite, monomial_basis, LeibnizOutcome,
    XLowering,
};
pub use kg::{
    deformed_derivative, deformed_mass_square, deformed_reading_residual, kg_factored, kg_second_order, kg_suite, Deriv,
};
pub use symbol::{Momentum, MomentumMode, NormalSymbol, XMono};

use crate::hopfcore::{AlgebraElement, HopfPresentation, PresentationBuilder, TensorElement, Word};
use crate::kalgebra::{KAlgebra, Kind};
use crate::report::CheckRecord;
use crate::scalars::{Coefficient, ScalarError};

pub const STAR_SUITE: &str = "mink-star";
pub const ANTIREP_SUITE: &str = "antirep";
pub const LEIBNIZ_SUITE: &str = "leibniz";
pub const KG_SUITE: &str = "kg";
pub const EXTRACT_SUITE: &str = "extract-compare";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KMinkError {
    #[error("symbolic and on-shell plane waves cannot be combined")]
    ModeMismatch,
    #[error("inconsistent prefactor system: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `M_k` as a Hopf presentation: `x0` before the spatial coordinates,
/// `[x0, x^j] = (i/k) x^j`, primitive coproduct.
pub fn minkowski_presentation() -> HopfPresentation {
    let mut b = PresentationBuilder::new("kappa-Minkowski space");
    let x0 = b.generator("x[0]", 0, 0);
    let xs: Vec<_> = (1..4).map(|j| b.generator(&format!("x[{}]", j), 1, j)).collect();
    let ik = Coefficient::i().mul_ref(&Coefficient::inv_kappa());
    for &x in &xs {
        b.bracket(x0, x, AlgebraElement::gen(x).scale(&ik));
    }
    for g in std::iter::once(x0).chain(xs) {
        let mut d = TensorElement::zero(2);
        d.add_term(vec![Word::single(g), Word::empty()], &Coefficient::one());
        d.add_term(vec![Word::empty(), Word::single(g)], &Coefficient::one());
        b.set_delta(g, d);
        b.set_antipode(g, AlgebraElement::gen(g).scale(&Coefficient::from_int(-1)));
        b.set_counit(g, Coefficient::zero());
    }
    b.build().expect("kappa-Minkowski presentation is valid")
}

/// Symbol of a normal-ordered element of the presentation.
pub fn symbol_of_element(e: &AlgebraElement) -> NormalSymbol {
    let mut out = NormalSymbol::zero();
    for (w, c) in e.terms() {
        let mut m = [0u32; 4];
        for &g in w.gens() {
            m[g as usize] += 1;
        }
        out = out.add(&NormalSymbol::monomial(m, c.clone())).expect("polynomial");
    }
    out
}

fn outcome(r: Result<NormalSymbol, KMinkError>) -> Result<(), String> {
    match r {
        Ok(z) if z.is_zero() => Ok(()),
        Ok(z) => Err(z.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn record(name: &str, results: Vec<(String, Result<(), String>)>) -> CheckRecord {
    let name = format!("{} [{} cases]", name, results.len());
    match results.into_iter().find(|(_, r)| r.is_err()) {
        None => CheckRecord::pass(STAR_SUITE, name),
        Some((label, Err(res))) => CheckRecord::fail(STAR_SUITE, name, format!("{}: {}", label, res)),
        Some(_) => unreachable!(),
    }
}

/// Eigenvalue of a word of momentum generators on a wave.
fn word_eigenvalue(alg: &KAlgebra, w: &Word, p: &Momentum) -> Option<Coefficient> {
    let mut v = Coefficient::one();
    for &g in w.gens() {
        v = v.mul_ref(&match alg.kind(g) {
            Kind::P(mu) => p.component(mu).clone(),
            Kind::A => p.e_inv(),
            Kind::AInv => p.e.clone(),
            _ => return None,
        });
    }
    Some(v)
}

pub fn star_suite(alg: &KAlgebra, max_degree: u32, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let x = NormalSymbol::x;
    let ik = Coefficient::i().mul_ref(&Coefficient::inv_kappa());

    let ex = x(1).star(&x(0)).and_then(|s| s.sub(&x(0).star(&x(1))?.sub(&x(1).scale(&ik))?));
    out.push(record(":x1: * :x0: = :x0 x1: - (i/k) :x1:", vec![("x1 x0".into(), outcome(ex))]));

    // against the rewriting engine of the presentation
    let pres = minkowski_presentation();
    let mut cases = Vec::new();
    for _ in 0..samples {
        let w = crate::hopfcore::random_raw_word(&pres, &mut rng, 5);
        let r = (|| -> Result<NormalSymbol, KMinkError> {
            let mut s = NormalSymbol::one();
            for &g in w.gens() {
                s = s.star(&x(g as usize))?;
            }
            let nf = pres.normal_form(&AlgebraElement::word(w.gens())).map_err(|e| KMinkError::Usage(e.to_string()))?;
            s.sub(&symbol_of_element(&nf))
        })();
        cases.push((pres.render_word(&w), outcome(r)));
    }
    out.push(record("star products of coordinates match the rewriting engine", cases));

    let mut cases = Vec::new();
    for n in 0..samples {
        let (a, b, c) = (
            hat::random_polynomial(&mut rng, max_degree, 3),
            hat::random_polynomial(&mut rng, max_degree, 3),
            hat::random_polynomial(&mut rng, max_degree, 3),
        );
        let r = (|| a.star(&b)?.star(&c)?.sub(&a.star(&b.star(&c)?)?))();
        cases.push((format!("triple {}", n), outcome(r)));
    }
    out.push(record(&format!("associativity on polynomials of degree <= {}", max_degree), cases));

    let waves: Vec<NormalSymbol> = (0..3).map(|a| NormalSymbol::wave(Momentum::symbolic(a))).collect();
    let mut cases = Vec::new();
    let r = (|| waves[0].star(&waves[1])?.star(&waves[2])?.sub(&waves[0].star(&waves[1].star(&waves[2])?)?))();
    cases.push(("three waves".to_string(), outcome(r)));
    for n in 0..samples.min(8) {
        let f: Vec<NormalSymbol> = (0..3)
            .map(|a| {
                let p = hat::random_polynomial(&mut rng, 2, 2);
                p.star(&waves[a]).expect("symbolic")
            })
            .collect();
        let r = (|| f[0].star(&f[1])?.star(&f[2])?.sub(&f[0].star(&f[1].star(&f[2])?)?))();
        cases.push((format!("polynomial times wave triple {}", n), outcome(r)));
    }
    out.push(record("associativity on plane waves", cases));

    // composition of momenta against the algebra coproduct
    let (p, q) = (Momentum::symbolic(0), Momentum::symbolic(1));
    let mut cases = Vec::new();
    let prod = waves[0].star(&waves[1]);
    let composed = p.compose(&q);
    cases.push((
        "wave * wave is a single wave".to_string(),
        outcome(prod.and_then(|s| s.sub(&NormalSymbol::wave(composed.clone()?)))),
    ));
    for mu in 0..4 {
        let g = alg.gen_of(Kind::P(mu));
        let r = (|| -> Result<(), String> {
            let d = alg.pres.coproduct(&AlgebraElement::gen(g)).map_err(|e| e.to_string())?;
            let mut v = Coefficient::zero();
            for (slots, c) in d.terms() {
                let a = word_eigenvalue(alg, &slots[0], &p).ok_or("non-momentum leg")?;
                let b = word_eigenvalue(alg, &slots[1], &q).ok_or("non-momentum leg")?;
                v = v.add_ref(&a.mul_ref(&b).mul_ref(c));
            }
            let comp = composed.clone().map_err(|e| e.to_string())?;
            let diff = v.sub_ref(comp.component(mu));
            if diff.is_zero() {
                Ok(())
            } else {
                Err(diff.to_string())
            }
        })();
        cases.push((format!("delta P[{}]", mu), r));
    }
    out.push(record("plane-wave momenta compose by the coproduct of P", cases));
    out
}
