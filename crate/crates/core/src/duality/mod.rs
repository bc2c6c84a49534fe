//! Hopf pairing between the kappa-Poincare algebra and group.
//!
//! Generator table: `<P_mu, v^nu> = i delta`, `<M_{mu nu}, L^a_b>` from
//! `i(d/dL^{mu nu} - d/dL^{nu mu})` at the identity with
//! `L^{mu nu} = L^mu_rho g^{rho nu}`, all other generator pairs zero. Products
//! are expanded with `<XY, f> = <X (x) Y, delta f>` and
//! `<X, fg> = <delta X, f (x) g>`; `A` is paired through the exponential
//! series in `P0`, which terminates at the translation degree of `f`.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::hopfcore::{random_normal_word, AlgebraElement, Gen, HopfError, Outcome, Tally, Word};
use crate::kalgebra::{build_kalgebra, KAlgebra, Kind};
use crate::kgroup::{build_kgroup, KGroup};
use crate::metric::{delta, g2};
use crate::report::CheckRecord;
use crate::scalars::Coefficient;

pub const SUITE: &str = "duality";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Which side is split first when both arguments are products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    AlgebraFirst,
    GroupFirst,
}

/// Index raising in `L^{mu nu}`. `First` is the negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Raising {
    Second,
    First,
}

pub struct Duality {
    pub alg: KAlgebra,
    pub grp: KGroup,
    raising: Raising,
    memo: Mutex<HashMap<(Route, Word, Word), Coefficient>>,
}

impl Default for Duality {
    fn default() -> Self {
        Duality::new()
    }
}

impl Duality {
    pub fn new() -> Self {
        Duality::with_raising(Raising::Second)
    }

    pub fn with_raising(raising: Raising) -> Self {
        Duality { alg: build_kalgebra(), grp: build_kgroup(), raising, memo: Mutex::new(HashMap::new()) }
    }

    /// `<X, f>` expanding the algebra side first.
    pub fn pair(&self, x: &AlgebraElement, f: &AlgebraElement) -> Result<Coefficient, DualityError> {
        self.pair_route(x, f, Route::AlgebraFirst)
    }

    pub fn pair_route(&self, x: &AlgebraElement, f: &AlgebraElement, route: Route) -> Result<Coefficient, DualityError> {
        let mut acc = Coefficient::zero();
        for (wx, cx) in x.terms() {
            for (wf, cf) in f.terms() {
                let v = self.pair_words(route, wx, wf, 0)?;
                acc = acc.add_ref(&v.mul_ref(cx).mul_ref(cf));
            }
        }
        Ok(acc)
    }

    /// Translation degree of a group word.
    fn v_degree(&self, f: &Word) -> usize {
        f.gens().iter().filter(|&&x| !self.grp.is_lambda(x)).count()
    }

    fn pair_words(&self, route: Route, x: &Word, f: &Word, depth: usize) -> Result<Coefficient, DualityError> {
        if x.is_empty() {
            return Ok(self.grp.pres.counit_word(f));
        }
        if f.is_empty() {
            return Ok(self.alg.pres.counit_word(x));
        }
        if depth > 2 * (x.len() + f.len()) + 64 {
            return Err(DualityError::Internal("pairing recursion exceeded its degree bound".into()));
        }
        let key = (route, x.clone(), f.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let split_x = x.len() >= 2 && (route == Route::AlgebraFirst || f.len() == 1);
        let result = if split_x {
            let head = Word::single(x.gens()[0]);
            let tail = Word(x.gens()[1..].to_vec());
            let df = self.grp.pres.coproduct(&AlgebraElement::term(Coefficient::one(), f.clone()))?;
            let mut acc = Coefficient::zero();
            for (slots, c) in df.terms() {
                let a = self.pair_words(route, &head, &slots[0], depth + 1)?;
                if a.is_zero() {
                    continue;
                }
                let b = self.pair_words(route, &tail, &slots[1], depth + 1)?;
                acc = acc.add_ref(&a.mul_ref(&b).mul_ref(c));
            }
            acc
        } else if f.len() >= 2 {
            let head = Word::single(f.gens()[0]);
            let tail = Word(f.gens()[1..].to_vec());
            let dx = self.alg.pres.coproduct(&AlgebraElement::term(Coefficient::one(), x.clone()))?;
            let mut acc = Coefficient::zero();
            for (slots, c) in dx.terms() {
                let a = self.pair_words(route, &slots[0], &head, depth + 1)?;
                if a.is_zero() {
                    continue;
                }
                let b = self.pair_words(route, &slots[1], &tail, depth + 1)?;
                acc = acc.add_ref(&a.mul_ref(&b).mul_ref(c));
            }
            acc
        } else {
            self.pair_generators(route, x.gens()[0], f.gens()[0], depth)?
        };
        self.memo.lock().unwrap().insert(key, result.clone());
        Ok(result)
    }

    fn pair_generators(&self, route: Route, x: Gen, f: Gen, depth: usize) -> Result<Coefficient, DualityError> {
        let i = Coefficient::i();
        let kind = self.alg.kind(x);
        let m_indices = match kind {
            Kind::Rot(a, b) => Some((a, b)),
            Kind::Boost(a) => Some((a, 0)),
            _ => None,
        };
        if let Some((mu, nu)) = m_indices {
            return Ok(match self.grp.lambda_indices(f) {
                Some((a, b)) => i.mul_ref(&Coefficient::from_int(self.lambda_derivative(mu, nu, a, b))),
                None => Coefficient::zero(),
            });
        }
        match kind {
            Kind::P(mu) => Ok(match self.grp.v_index(f) {
                Some(nu) => i.mul_ref(&Coefficient::from_int(delta(mu, nu))),
                None => Coefficient::zero(),
            }),
            Kind::A | Kind::AInv => {
                let sign = if kind == Kind::A { -1 } else { 1 };
                let fw = Word::single(f);
                let bound = self.v_degree(&fw);
                let p0 = self.alg.gen_of(Kind::P(0));
                let mut acc = Coefficient::zero();
                let mut fact = 1i64;
                for n in 0..=bound + 1 {
                    if n > 0 {
                        fact *= n as i64;
                    }
                    let v = self.pair_words(route, &Word(vec![p0; n]), &fw, depth + 1)?;
                    if n > bound {
                        if !v.is_zero() {
                            return Err(DualityError::Internal(format!(
                                "<P0^{}, f> = {} beyond the translation degree",
                                n, v
                            )));
                        }
                        break;
                    }
                    let w = Coefficient::from_int(sign)
                        .pow(n as u32)
                        .mul_ref(&Coefficient::inv_kappa().pow(n as u32))
                        .mul_ref(&Coefficient::from_ratio(1, fact));
                    acc = acc.add_ref(&v.mul_ref(&w));
                }
                Ok(acc)
            }
            _ => unreachable!(),
        }
    }

    /// `(d/dL^{mu nu} - d/dL^{nu mu}) L^a_b` (without the factor i).
    fn lambda_derivative(&self, mu: usize, nu: usize, a: usize, b: usize) -> i64 {
        // L^a_b = L^{a s} g_{s b}: d/dL^{mu nu} gives d^a_mu g_{nu b}.
        // Raising on the first index instead: L^a_b = g_{a s} L^s_b with
        // L^{s}_b read as L^{s b}; d/dL^{mu nu} gives g_{a mu} d^mu_a d_{nu b}.
        let d = |m: usize, n: usize| match self.raising {
            Raising::Second => delta(a, m) * g2(n, b),
            Raising::First => g2(a, m) * delta(n, b),
        };
        d(mu, nu) - d(nu, mu)
    }

    /// Render helpers.
    pub fn render_algebra(&self, x: &AlgebraElement) -> String {
        self.alg.pres.render(x)
    }
}

fn scalar_check(c: Result<Coefficient, DualityError>) -> Outcome {
    match c {
        Ok(v) if v.is_zero() => Outcome::Zero,
        Ok(v) => Outcome::Residual(v.to_string()),
        Err(e) => Outcome::Residual(format!("error: {}", e)),
    }
}

fn word_el(w: Word) -> AlgebraElement {
    AlgebraElement::term(Coefficient::one(), w)
}

/// Two-route agreement, relation kernels, unit/counit compatibility,
/// antipode compatibility, the group-like character property and the
/// termination bound, plus the worked value `<P_1, v^1 v^0> = 1/k`.
pub fn duality_consistency_suite(d: &Duality, max_degree: usize, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let (ap, gp) = (&d.alg.pres, &d.grp.pres);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..samples)
        .map(|_| {
            (word_el(random_normal_word(ap, &mut rng, max_degree)), word_el(random_normal_word(gp, &mut rng, max_degree)))
        })
        .collect();
    let mut out = Vec::new();

    // (a) two routes
    let results: Vec<Outcome> = pairs
        .par_iter()
        .map(|(x, f)| {
            let r = d
                .pair_route(x, f, Route::AlgebraFirst)
                .and_then(|a| Ok(a.sub_ref(&d.pair_route(x, f, Route::GroupFirst)?)));
            scalar_check(r)
        })
        .collect();
    let mut t = Tally::new(SUITE, "algebra-first and group-first expansions agree");
    for ((x, f), o) in pairs.iter().zip(results) {
        t.record(o, || format!("<{}, {}>", ap.render(x), gp.render(f)));
    }
    out.push(t.finish());

    // worked value
    let p1 = d.alg.p(1);
    let v1v0 = AlgebraElement::word(&[d.grp.v(1), d.grp.v(0)]);
    let expected = Coefficient::inv_kappa();
    let mut t = Tally::new(SUITE, "<P[1], v[1]*v[0]> = 1/k by every route");
    let normal = gp.normal_form(&v1v0).map_err(DualityError::from);
    for (name, r) in [
        ("algebra-first", d.pair_route(&p1, &v1v0, Route::AlgebraFirst)),
        ("group-first", d.pair_route(&p1, &v1v0, Route::GroupFirst)),
        ("normal-ordered first", normal.and_then(|nf| d.pair(&p1, &nf))),
    ] {
        t.record(scalar_check(r.map(|v| v.sub_ref(&expected))), || name.to_string());
    }
    out.push(t.finish());

    // (b) relation kernels
    let probe_x: Vec<AlgebraElement> = d
        .alg
        .pres
        .generators()
        .iter()
        .enumerate()
        .map(|(g, _)| AlgebraElement::gen(g as Gen))
        .chain((0..8).map(|_| word_el(random_normal_word(ap, &mut rng, 2))))
        .collect();
    let probe_f: Vec<AlgebraElement> = (0..gp.num_generators())
        .map(|g| AlgebraElement::gen(g as Gen))
        .chain((0..8).map(|_| word_el(random_normal_word(gp, &mut rng, 2))))
        .collect();
    out.push(kernel_check(d, &probe_f, false));
    out.push(kernel_check(d, &probe_x, true));

    // the example relation M10 P0 - P0 M10 - i P1 in the left kernel
    let m10 = d.alg.m(1, 0);
    let p0 = d.alg.p(0);
    let rel = m10.concat_word(&p0).sub(&p0.concat_word(&m10)).sub(&p1.scale(&Coefficient::i()));
    let mut t = Tally::new(SUITE, "<M[1,0]*P[0] - P[0]*M[1,0] - i*P[1], f> = 0");
    let mut rng2 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    for _ in 0..samples.min(30) {
        let f = word_el(random_normal_word(gp, &mut rng2, 2));
        t.record(scalar_check(d.pair_route(&rel, &f, Route::AlgebraFirst)), || gp.render(&f));
    }
    out.push(t.finish());

    // (c) unit and counit
    let mut t = Tally::new(SUITE, "<X, 1> = eps(X) and <1, f> = eps(f)");
    for (x, f) in &pairs {
        let r1 = d.pair(x, &AlgebraElement::one()).and_then(|v| Ok(v.sub_ref(&ap.counit(x)?)));
        t.record(scalar_check(r1), || ap.render(x));
        let r2 = d.pair(&AlgebraElement::one(), f).and_then(|v| Ok(v.sub_ref(&gp.counit(f)?)));
        t.record(scalar_check(r2), || gp.render(f));
    }
    out.push(t.finish());

    // antipodes
    let results: Vec<Outcome> = pairs
        .par_iter()
        .map(|(x, f)| {
            let r = (|| -> Result<Coefficient, DualityError> {
                let sx = ap.antipode(x)?;
                let sf = gp.antipode(f)?;
                // S(f) has long words in L; splitting them through the
                // small coproduct of X is far cheaper than through delta f
                let rhs = d.pair_route(x, &sf, Route::GroupFirst)?;
                Ok(d.pair(&sx, f)?.sub_ref(&rhs))
            })();
            scalar_check(r)
        })
        .collect();
    let mut t = Tally::new(SUITE, "<S(X), f> = <X, S(f)>");
    for ((x, f), o) in pairs.iter().zip(results) {
        t.record(o, || format!("<{}, {}>", ap.render(x), gp.render(f)));
    }
    out.push(t.finish());

    // A is a character
    let mut t = Tally::new(SUITE, "<A, fg> = <A, f><A, g>");
    let a = d.alg.a();
    for pair in pairs.chunks(2) {
        if pair.len() < 2 {
            break;
        }
        let (f, g) = (&pair[0].1, &pair[1].1);
        let r = (|| -> Result<Coefficient, DualityError> {
            let fg = gp.multiply(f, g)?;
            Ok(d.pair(&a, &fg)?.sub_ref(&d.pair(&a, f)?.mul_ref(&d.pair(&a, g)?)))
        })();
        t.record(scalar_check(r), || format!("{} , {}", gp.render(f), gp.render(g)));
    }
    out.push(t.finish());

    // termination bound
    let mut t = Tally::new(SUITE, "<P[0]^n, f> = 0 for n > translation degree of f");
    let p0g = d.alg.gen_of(Kind::P(0));
    for (_, f) in &pairs {
        for (w, _) in f.terms() {
            let n = d.v_degree(w) + 1;
            let r = d.pair(&AlgebraElement::word(&vec![p0g; n]), f);
            t.record(scalar_check(r), || gp.render(f));
        }
    }
    out.push(t.finish());
    out
}

/// Pairing against both sides of every rewrite rule (and commutation and
/// inverse cancellation) of one presentation.
fn kernel_check(d: &Duality, probes: &[AlgebraElement], group_side: bool) -> CheckRecord {
    let p = if group_side { &d.grp.pres } else { &d.alg.pres };
    let n = p.num_generators() as Gen;
    let mut relations = Vec::new();
    for h in 0..n {
        for g in 0..n {
            let inverse = p.generators()[h as usize].inverse == Some(g);
            if h > g || inverse {
                let lhs = AlgebraElement::word(&[h, g]);
                // one-step replacement, not the normal form
                let rhs = if inverse { AlgebraElement::one() } else { p.raw_replacement(h, g) };
                relations.push((format!("{}*{}", p.gen_name(h), p.gen_name(g)), lhs.sub(&rhs)));
            }
        }
    }
    let name = if group_side {
        "<X, lhs - rhs> = 0 for every group relation"
    } else {
        "<lhs - rhs, f> = 0 for every algebra relation"
    };
    let results: Vec<(String, Outcome)> = relations
        .par_iter()
        .flat_map_iter(|(label, rel)| {
            probes.iter().map(move |probe| {
                let r = if group_side {
                    d.pair_route(probe, rel, Route::GroupFirst)
                } else {
                    d.pair_route(rel, probe, Route::AlgebraFirst)
                };
                (label.clone(), scalar_check(r))
            })
        })
        .collect();
    let mut t = Tally::new(SUITE, name);
    for (label, o) in results {
        t.record(o, || label.clone());
    }
    t.finish()
}
