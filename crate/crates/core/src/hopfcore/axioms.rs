use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::{AlgebraElement, Gen, TensorElement, Word};
use super::presentation::HopfPresentation;
use super::HopfError;
use crate::report::CheckRecord;
use crate::scalars::Coefficient;

/// A random normal word of length 1..=max_degree with uniformly chosen letters.
pub fn random_normal_word(p: &HopfPresentation, rng: &mut ChaCha8Rng, max_degree: usize) -> Word {
    let n = p.num_generators() as Gen;
    loop {
        let len = rng.gen_range(1..=max_degree.max(1));
        let mut v: Vec<Gen> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        v.sort();
        // drop adjacent inverse pairs; the remainder is still sorted
        let mut out: Vec<Gen> = Vec::new();
        for g in v {
            match out.last() {
                Some(&h) if p.is_inverse_pair(h, g) => {
                    out.pop();
                }
                _ => out.push(g),
            }
        }
        if !out.is_empty() {
            return Word(out);
        }
    }
}

/// A random raw (unordered) word.
pub fn random_raw_word(p: &HopfPresentation, rng: &mut ChaCha8Rng, max_degree: usize) -> Word {
    let n = p.num_generators() as Gen;
    let len = rng.gen_range(1..=max_degree.max(1));
    Word((0..len).map(|_| rng.gen_range(0..n)).collect())
}

/// Accumulates pass/fail over many instances of one named identity, keeping
/// the first residual.
pub(crate) struct Tally {
    pub(crate) suite: String,
    pub(crate) name: String,
    pub(crate) count: usize,
    pub(crate) modulo: usize,
    pub(crate) failure: Option<String>,
}

impl Tally {
    pub(crate) fn new(suite: &str, name: &str) -> Self {
        Tally { suite: suite.into(), name: name.into(), count: 0, modulo: 0, failure: None }
    }

    pub(crate) fn record(&mut self, outcome: Outcome, what: impl FnOnce() -> String) {
        self.count += 1;
        match outcome {
            Outcome::Zero => {}
            Outcome::ModIdeal => self.modulo += 1,
            Outcome::Residual(r) => {
                if self.failure.is_none() {
                    self.failure = Some(format!("{}: {}", what(), r));
                }
            }
        }
    }

    pub(crate) fn error(&mut self, e: HopfError, what: impl FnOnce() -> String) {
        self.record(Outcome::Residual(format!("error: {}", e)), what);
    }

    pub(crate) fn finish(self) -> CheckRecord {
        let mut name = format!("{} [{} cases]", self.name, self.count);
        if self.modulo > 0 {
            name.push_str(&format!(" [{} mod ideal]", self.modulo));
        }
        CheckRecord::from_residual(&self.suite, name, self.failure)
    }
}

pub(crate) enum Outcome {
    Zero,
    ModIdeal,
    Residual(String),
}

pub(crate) fn element_outcome(p: &HopfPresentation, e: &AlgebraElement) -> Outcome {
    if e.is_zero() {
        Outcome::Zero
    } else if p.element_vanishes(e) {
        Outcome::ModIdeal
    } else {
        Outcome::Residual(p.render(e))
    }
}

pub(crate) fn tensor_outcome(p: &HopfPresentation, t: &TensorElement) -> Outcome {
    if t.is_zero() {
        Outcome::Zero
    } else if p.tensor_vanishes(t) {
        Outcome::ModIdeal
    } else {
        Outcome::Residual(p.render_tensor(t))
    }
}

pub(crate) fn scalar_outcome(c: &Coefficient) -> Outcome {
    if c.is_zero() {
        Outcome::Zero
    } else {
        Outcome::Residual(c.to_string())
    }
}

/// Test elements: every generator followed by `samples` random normal words.
pub fn sample_elements(p: &HopfPresentation, max_degree: usize, samples: usize, seed: u64) -> Vec<AlgebraElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<AlgebraElement> = (0..p.num_generators()).map(|g| AlgebraElement::gen(g as Gen)).collect();
    for _ in 0..samples {
        v.push(AlgebraElement::term(Coefficient::one(), random_normal_word(p, &mut rng, max_degree)));
    }
    v
}

/// Coassociativity, both counit laws and both antipode laws on the given
/// elements.
pub fn check_elements(p: &HopfPresentation, suite: &str, elements: &[AlgebraElement]) -> Vec<CheckRecord> {
    let mut coassoc = Tally::new(suite, "coassociativity");
    let mut counit_l = Tally::new(suite, "counit law (eps (x) id) delta = id");
    let mut counit_r = Tally::new(suite, "counit law (id (x) eps) delta = id");
    let mut anti_l = Tally::new(suite, "antipode law m(S (x) id) delta = eps");
    let mut anti_r = Tally::new(suite, "antipode law m(id (x) S) delta = eps");
    for x in elements {
        let what = || p.render(x);
        let d = match p.coproduct(x) {
            Ok(d) => d,
            Err(e) => {
                coassoc.error(e, what);
                continue;
            }
        };
        match p.delta_slot(&d, 0).and_then(|l| Ok(l.sub(&p.delta_slot(&d, 1)?))) {
            Ok(r) => coassoc.record(tensor_outcome(p, &r), what),
            Err(e) => coassoc.error(e, what),
        }
        match p.counit_slot(&d, 0) {
            Ok(r) => counit_l.record(element_outcome(p, &r.sub(x)), what),
            Err(e) => counit_l.error(e, what),
        }
        match p.counit_slot(&d, 1) {
            Ok(r) => counit_r.record(element_outcome(p, &r.sub(x)), what),
            Err(e) => counit_r.error(e, what),
        }
        let eps = match p.counit(x) {
            Ok(c) => AlgebraElement::scalar(c),
            Err(e) => {
                anti_l.error(e, what);
                continue;
            }
        };
        match p.antipode_multiply(&d, true) {
            Ok(r) => anti_l.record(element_outcome(p, &r.sub(&eps)), what),
            Err(e) => anti_l.error(e, what),
        }
        match p.antipode_multiply(&d, false) {
            Ok(r) => anti_r.record(element_outcome(p, &r.sub(&eps)), what),
            Err(e) => anti_r.error(e, what),
        }
    }
    [coassoc, counit_l, counit_r, anti_l, anti_r].into_iter().map(Tally::finish).collect()
}

/// Δ, S, ε applied to both sides of every rewrite rule, every implicit
/// commutation and every inverse cancellation.
pub fn check_rule_compatibility(p: &HopfPresentation, suite: &str) -> Vec<CheckRecord> {
    check_rule_compatibility_by(p, suite, &|_, _| "all pairs".to_string())
}

/// As [`check_rule_compatibility`], with one record per (family, map), where
/// `family` labels each out-of-order generator pair.
pub fn check_rule_compatibility_by(
    p: &HopfPresentation,
    suite: &str,
    family: &dyn Fn(Gen, Gen) -> String,
) -> Vec<CheckRecord> {
    let n = p.num_generators() as Gen;
    let mut relations: Vec<(AlgebraElement, AlgebraElement, String, String)> = Vec::new();
    for h in 0..n {
        for g in 0..n {
            let inverse = p.is_inverse_pair(h, g);
            if !(h > g || inverse) {
                continue;
            }
            let lhs = AlgebraElement::word(&[h, g]);
            let rhs = if inverse { AlgebraElement::one() } else { p.raw_replacement(h, g) };
            let fam = family(h.max(g), h.min(g));
            relations.push((lhs, rhs, fam, format!("{}*{}", p.gen_name(h), p.gen_name(g))));
        }
    }
    let mut tallies: BTreeMap<(String, usize), Tally> = BTreeMap::new();
    let maps = ["coproduct", "antipode", "counit"];
    for (lhs, rhs, fam, label) in &relations {
        let outcomes = [
            p.coproduct(lhs).and_then(|a| Ok(a.sub(&p.coproduct(rhs)?))).map(|r| tensor_outcome(p, &r)),
            p.antipode(lhs).and_then(|a| Ok(a.sub(&p.antipode(rhs)?))).map(|r| element_outcome(p, &r)),
            p.counit(lhs).and_then(|a| Ok(a.sub_ref(&p.counit(rhs)?))).map(|r| scalar_outcome(&r)),
        ];
        for (k, outcome) in outcomes.into_iter().enumerate() {
            let tally = tallies
                .entry((fam.clone(), k))
                .or_insert_with(|| Tally::new(suite, &format!("rule compatibility ({}): {}", fam, maps[k])));
            match outcome {
                Ok(o) => tally.record(o, || label.clone()),
                Err(e) => tally.error(e, || label.clone()),
            }
        }
    }
    tallies.into_values().map(Tally::finish).collect()
}

/// Full Hopf-axiom verification on all generators and `samples` random
/// normal monomials of degree at most `max_degree`.
pub fn check_hopf_axioms(
    p: &HopfPresentation,
    suite: &str,
    max_degree: usize,
    samples: usize,
    seed: u64,
) -> Vec<CheckRecord> {
    let elements = sample_elements(p, max_degree, samples, seed);
    let mut out = check_elements(p, suite, &elements);
    out.extend(check_rule_compatibility(p, suite));
    out
}

/// Naive rewriting that repeatedly applies a rule at a randomly chosen
/// reducible position of a randomly chosen term, until every word is normal.
pub fn random_order_normal_form(
    p: &HopfPresentation,
    e: &AlgebraElement,
    rng: &mut ChaCha8Rng,
    step_budget: usize,
) -> Result<AlgebraElement, HopfError> {
    let mut terms: BTreeMap<Word, Coefficient> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut steps = 0;
    loop {
        let reducible: Vec<Word> = terms.keys().filter(|w| !p.is_normal_word(w)).cloned().collect();
        if reducible.is_empty() {
            let mut out = AlgebraElement::zero();
            for (w, c) in terms {
                out.add_term(w, &c);
            }
            return Ok(out);
        }
        steps += 1;
        if steps > step_budget {
            return Err(HopfError::Nontermination(vec![format!("random-order rewriting exceeded {} steps", step_budget)]));
        }
        let w = reducible.choose(rng).unwrap().clone();
        let c = terms.remove(&w).unwrap();
        let positions: Vec<usize> = (0..w.len() - 1)
            .filter(|&i| {
                let (a, b) = (w.gens()[i], w.gens()[i + 1]);
                a > b || p.is_inverse_pair(a, b)
            })
            .collect();
        let i = *positions.choose(rng).unwrap();
        let (a, b) = (w.gens()[i], w.gens()[i + 1]);
        let rep = if p.is_inverse_pair(a, b) {
            AlgebraElement::one()
        } else {
            p.raw_replacement(a, b)
        };
        for (rw, rc) in rep.terms() {
            let mut v = w.gens()[..i].to_vec();
            v.extend_from_slice(rw.gens());
            v.extend_from_slice(&w.gens()[i + 2..]);
            let nw = Word(v);
            let nc = c.mul_ref(rc);
            let merged = match terms.get(&nw) {
                Some(old) => old.add_ref(&nc),
                None => nc,
            };
            if merged.is_zero() {
                terms.remove(&nw);
            } else {
                terms.insert(nw, merged);
            }
        }
    }
}

/// Compares the deterministic engine with randomized-order rewriting on
/// `probes` random raw elements.
pub fn confluence_probe(
    p: &HopfPresentation,
    suite: &str,
    probes: usize,
    max_degree: usize,
    seed: u64,
) -> CheckRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new(suite, "confluence probe (random rule order)");
    for _ in 0..probes {
        let mut e = AlgebraElement::zero();
        let nterms = rng.gen_range(1..=2);
        for _ in 0..nterms {
            let w = random_raw_word(p, &mut rng, max_degree);
            e.add_term(w, &Coefficient::from_int(rng.gen_range(1..=3)));
        }
        let what = || p.render(&e);
        let expected = match p.normal_form(&e) {
            Ok(x) => x,
            Err(err) => {
                tally.error(err, what);
                continue;
            }
        };
        match random_order_normal_form(p, &e, &mut rng, 100_000) {
            Ok(got) => tally.record(
                if got == expected { Outcome::Zero } else { Outcome::Residual(p.render(&got.sub(&expected))) },
                what,
            ),
            Err(err) => tally.error(err, what),
        }
    }
    tally.finish()
}
