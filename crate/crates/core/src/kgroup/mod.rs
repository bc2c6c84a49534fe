//! The kappa-Poincare group: sixteen commuting matrix coordinates `L[m,n]`
//! and four translation coordinates `v[m]`.

mod lorentz;

use std::sync::Arc;

pub use lorentz::{is_lorentz, random_lorentz, LorentzIdeal, Matrix4};

use crate::hopfcore::{
    check_elements, check_rule_compatibility_by, confluence_probe, sample_elements, AlgebraElement, Gen, HopfError,
    HopfPresentation, Outcome, PresentationBuilder, Tally, TensorElement, Word,
};
use crate::metric::{delta, g};
use crate::report::CheckRecord;
use crate::scalars::Coefficient;

pub const SUITE: &str = "group-hopf";

/// Seed of the fixed Lorentz sample points used by the ideal test.
const LORENTZ_POINT_SEED: u64 = 0x4c6f_7265_6e74;

/// Which metric enters the antipode. `AllPlus` is the negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeMetric {
    Minkowski,
    AllPlus,
}

pub struct KGroup {
    pub pres: HopfPresentation,
    lambda: [[Gen; 4]; 4],
    v: [Gen; 4],
}

impl KGroup {
    /// Handle of `Lambda^mu_nu`.
    pub fn lambda(&self, mu: usize, nu: usize) -> Gen {
        self.lambda[mu][nu]
    }

    pub fn v(&self, mu: usize) -> Gen {
        self.v[mu]
    }

    pub fn lambda_el(&self, mu: usize, nu: usize) -> AlgebraElement {
        AlgebraElement::gen(self.lambda[mu][nu])
    }

    pub fn v_el(&self, mu: usize) -> AlgebraElement {
        AlgebraElement::gen(self.v[mu])
    }

    pub fn is_lambda(&self, x: Gen) -> bool {
        x < self.v[0]
    }

    /// (mu, nu) of a matrix-coordinate handle.
    pub fn lambda_indices(&self, x: Gen) -> Option<(usize, usize)> {
        self.is_lambda(x).then(|| (x as usize / 4, x as usize % 4))
    }

    /// Index mu of a translation handle.
    pub fn v_index(&self, x: Gen) -> Option<usize> {
        self.v.iter().position(|&y| y == x)
    }
}

pub fn build_kgroup() -> KGroup {
    build_kgroup_with(AntipodeMetric::Minkowski)
}

pub fn build_kgroup_with(metric: AntipodeMetric) -> KGroup {
    let mut b = PresentationBuilder::new("kappa-Poincare group");
    let mut lambda = [[0 as Gen; 4]; 4];
    for (mu, row) in lambda.iter_mut().enumerate() {
        for (nu, h) in row.iter_mut().enumerate() {
            *h = b.generator(&format!("L[{},{}]", mu, nu), 0, (4 * mu + nu) as u32);
        }
    }
    let mut v = [0 as Gen; 4];
    v[0] = b.generator("v[0]", 1, 0);
    for (mu, h) in v.iter_mut().enumerate().skip(1) {
        *h = b.generator(&format!("v[{}]", mu), 2, mu as u32);
    }
    let l = |mu: usize, nu: usize| AlgebraElement::gen(lambda[mu][nu]);
    let ik = Coefficient::i().mul_ref(&Coefficient::inv_kappa());
    let int = |n: i64| AlgebraElement::scalar(Coefficient::from_int(n));

    // [L^a_b, v^r] = -(i/k)((L^a_0 - d^a_0) L^r_b + (L_{0b} - g_{0b}) g^{ar}),
    // with L_{0b} = g_00 L^0_b.
    for a in 0..4 {
        for bb in 0..4 {
            for r in 0..4 {
                let first = l(a, 0).sub(&int(delta(a, 0))).concat_word(&l(r, bb));
                let second = if a == r {
                    l(0, bb).sub(&int(delta(0, bb))).scale(&Coefficient::from_int(g(a)))
                } else {
                    AlgebraElement::zero()
                };
                let value = first.add(&second).scale(&ik.neg_ref());
                if !value.is_zero() {
                    b.bracket(lambda[a][bb], v[r], value);
                }
            }
        }
    }
    // [v^r, v^s] = (i/k)(d^r_0 v^s - d^s_0 v^r)
    for s in 1..4 {
        b.bracket(v[0], v[s], AlgebraElement::gen(v[s]).scale(&ik));
    }

    let sign = |mu: usize, nu: usize| match metric {
        AntipodeMetric::Minkowski => g(mu) * g(nu),
        AntipodeMetric::AllPlus => 1,
    };
    for mu in 0..4 {
        for nu in 0..4 {
            let mut d = TensorElement::zero(2);
            for a in 0..4 {
                d.add_term(vec![Word::single(lambda[mu][a]), Word::single(lambda[a][nu])], &Coefficient::one());
            }
            b.set_delta(lambda[mu][nu], d);
            // S(L^mu_nu) = L_nu^mu = g_{nu nu} g^{mu mu} L^nu_mu
            b.set_antipode(lambda[mu][nu], l(nu, mu).scale(&Coefficient::from_int(sign(mu, nu))));
            b.set_counit(lambda[mu][nu], Coefficient::from_int(delta(mu, nu)));
        }
    }
    for mu in 0..4 {
        let mut d = TensorElement::zero(2);
        for nu in 0..4 {
            d.add_term(vec![Word::single(lambda[mu][nu]), Word::single(v[nu])], &Coefficient::one());
        }
        d.add_term(vec![Word::single(v[mu]), Word::empty()], &Coefficient::one());
        b.set_delta(v[mu], d);
        let mut s = AlgebraElement::zero();
        for nu in 0..4 {
            s.add_term(Word(vec![lambda[nu][mu], v[nu]]), &Coefficient::from_int(-sign(mu, nu)));
        }
        b.set_antipode(v[mu], s);
        b.set_counit(v[mu], Coefficient::zero());
    }
    let pres = b.build().expect("group presentation is valid");
    let pres = pres.with_residual_test(Arc::new(LorentzIdeal::new(lambda, LORENTZ_POINT_SEED)));
    KGroup { pres, lambda, v }
}

/// The orthogonality relations `sum_mu g_mu L^mu_a L^mu_b - g_ab` and
/// `sum_mu g_mu L^a_mu L^b_mu - g_ab`.
pub fn orthogonality_relations(k: &KGroup) -> Vec<(String, AlgebraElement)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            for transpose in [false, true] {
                let mut e = AlgebraElement::zero();
                for mu in 0..4 {
                    let (x, y) = if transpose {
                        (k.lambda(a, mu), k.lambda(b, mu))
                    } else {
                        (k.lambda(mu, a), k.lambda(mu, b))
                    };
                    let mut w = vec![x, y];
                    w.sort();
                    e.add_term(Word(w), &Coefficient::from_int(g(mu)));
                }
                if a == b {
                    e.add_term(Word::empty(), &Coefficient::from_int(-g(a)));
                }
                let tag = if transpose { "L g L^T" } else { "L^T g L" };
                out.push((format!("({})_{}{}", tag, a, b), e));
            }
        }
    }
    out
}

fn family(k: &KGroup, h: Gen, gg: Gen) -> String {
    match (k.is_lambda(h), k.is_lambda(gg)) {
        (true, true) => "[L, L]".into(),
        (false, false) => "[v, v]".into(),
        _ => "[L, v]".into(),
    }
}

/// The group Hopf suite.
///
/// Residuals are first tested for literal zero; the antipode law on matrix
/// coordinates holds only modulo orthogonality, so those cases fall back to
/// the Lorentz-ideal test, and the suite separately checks that the ideal is
/// stable under the translation brackets.
pub fn kgroup_verify(max_degree: usize, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let k = build_kgroup();
    verify_instance(&k, max_degree, samples, seed)
}

/// Negative control: antipode built with an all-plus metric.
pub fn kgroup_verify_corrupt(max_degree: usize, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let k = build_kgroup_with(AntipodeMetric::AllPlus);
    verify_instance(&k, max_degree, samples, seed)
}

fn verify_instance(k: &KGroup, max_degree: usize, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let p = &k.pres;
    let elements = sample_elements(p, max_degree, samples, seed);
    let mut out = check_elements(p, SUITE, &elements);
    out.extend(check_rule_compatibility_by(p, SUITE, &|h, gg| family(k, h, gg)));
    out.push(ideal_stability(k));
    out.push(confluence_probe(p, SUITE, 1000, max_degree, seed ^ 0x9e37_79b9));
    out.extend(structure_checks(k, seed));
    out
}

/// [v^r, O] lies in the orthogonality ideal for every relation O, so the
/// ideal is two-sided and the coefficient-wise test is sound.
pub fn ideal_stability(k: &KGroup) -> CheckRecord {
    let p = &k.pres;
    let mut t = Tally::new(SUITE, "orthogonality ideal stable under [v, .]");
    for (name, o) in orthogonality_relations(k) {
        for r in 0..4 {
            let what = || format!("[v[{}], {}]", r, name);
            match p.commutator(&k.v_el(r), &o) {
                Ok(c) => {
                    let outcome = if c.is_zero() {
                        Outcome::Zero
                    } else if p.element_vanishes(&c) {
                        Outcome::ModIdeal
                    } else {
                        Outcome::Residual(p.render(&c))
                    };
                    t.record(outcome, what);
                }
                Err(e) => t.error(e, what),
            }
        }
    }
    t.finish()
}

/// Sector invariants: commuting matrix sector, closed translation sector,
/// multiplicative counit.
fn structure_checks(k: &KGroup, seed: u64) -> Vec<CheckRecord> {
    use rand::{Rng, SeedableRng};
    let p = &k.pres;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(17));
    let mut lam = Tally::new(SUITE, "matrix-coordinate words commute");
    let mut closed = Tally::new(SUITE, "translation sector closed");
    let mut character = Tally::new(SUITE, "counit is a character");
    let rand_word = |rng: &mut rand_chacha::ChaCha8Rng, lo: Gen, hi: Gen| -> AlgebraElement {
        let n = rng.gen_range(1..=3);
        AlgebraElement::word(&(0..n).map(|_| rng.gen_range(lo..hi)).collect::<Vec<_>>())
    };
    let ngen = p.num_generators() as Gen;
    for _ in 0..40 {
        let a = rand_word(&mut rng, 0, 16);
        let b = rand_word(&mut rng, 0, 16);
        match p.commutator(&a, &b) {
            Ok(c) => lam.record(if c.is_zero() { Outcome::Zero } else { Outcome::Residual(p.render(&c)) }, || p.render(&a)),
            Err(e) => lam.error(e, || p.render(&a)),
        }
        let w = rand_word(&mut rng, 16, ngen);
        match p.normal_form(&w) {
            Ok(nf) => {
                let bad = nf.terms().any(|(x, _)| x.gens().iter().any(|&y| k.is_lambda(y)));
                closed.record(if bad { Outcome::Residual(p.render(&nf)) } else { Outcome::Zero }, || p.render(&w));
            }
            Err(e) => closed.error(e, || p.render(&w)),
        }
        let f = rand_word(&mut rng, 0, ngen);
        let h = rand_word(&mut rng, 0, ngen);
        let res = (|| -> Result<Coefficient, HopfError> {
            let fh = p.multiply(&p.normal_form(&f)?, &p.normal_form(&h)?)?;
            Ok(p.counit(&fh)?.sub_ref(&p.counit(&f)?.mul_ref(&p.counit(&h)?)))
        })();
        match res {
            Ok(c) => character.record(crate::hopfcore::scalar_outcome(&c), || format!("{} , {}", p.render(&f), p.render(&h))),
            Err(e) => character.error(e, || p.render(&f)),
        }
    }
    vec![lam.finish(), closed.finish(), character.finish()]
}
