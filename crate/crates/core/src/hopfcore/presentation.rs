use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::element::{AlgebraElement, Gen, TensorElement, Word};
use super::HopfError;
use crate::scalars::Coefficient;

/// Depth of nested rule applications tolerated before declaring a loop.
const REWRITE_DEPTH_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub class: u32,
    pub index: u32,
    /// Formal inverse partner, if this generator is invertible.
    pub inverse: Option<Gen>,
}

/// Zero test that may accept residuals lying in an ideal of relations the
/// presentation does not impose (used for matrix-group coordinates).
pub trait ResidualTest: Send + Sync {
    fn element_vanishes(&self, e: &AlgebraElement) -> bool;
    fn tensor_vanishes(&self, t: &TensorElement) -> bool;
    fn describe(&self) -> String;
}

#[derive(Clone, Debug)]
pub(crate) struct Rule {
    /// Out-of-order pair `(h, g)` with `h > g`.
    pub(crate) pair: (Gen, Gen),
    /// Raw replacement for the word `h g`.
    pub(crate) raw: AlgebraElement,
}

/// Collects generators, brackets and structure maps, then validates them.
pub struct PresentationBuilder {
    name: String,
    gens: Vec<GeneratorSpec>,
    brackets: Vec<(Gen, Gen, AlgebraElement)>,
    delta: Vec<Option<TensorElement>>,
    antipode: Vec<Option<AlgebraElement>>,
    counit: Vec<Option<Coefficient>>,
}

impl PresentationBuilder {
    pub fn new(name: &str) -> Self {
        PresentationBuilder {
            name: name.to_string(),
            gens: Vec::new(),
            brackets: Vec::new(),
            delta: Vec::new(),
            antipode: Vec::new(),
            counit: Vec::new(),
        }
    }

    /// Adds a generator. Generators must be added in (class, index) order so
    /// that handles coincide with positions in the normal order.
    pub fn generator(&mut self, name: &str, class: u32, index: u32) -> Gen {
        let g = self.gens.len() as Gen;
        self.gens.push(GeneratorSpec { name: name.to_string(), class, index, inverse: None });
        self.delta.push(None);
        self.antipode.push(None);
        self.counit.push(None);
        g
    }

    pub fn inverse_pair(&mut self, a: Gen, b: Gen) {
        self.gens[a as usize].inverse = Some(b);
        self.gens[b as usize].inverse = Some(a);
    }

    /// Declares `[a, b] = value`. Pairs without a declaration commute.
    pub fn bracket(&mut self, a: Gen, b: Gen, value: AlgebraElement) {
        self.brackets.push((a, b, value));
    }

    pub fn set_delta(&mut self, g: Gen, t: TensorElement) {
        self.delta[g as usize] = Some(t);
    }

    pub fn set_antipode(&mut self, g: Gen, e: AlgebraElement) {
        self.antipode[g as usize] = Some(e);
    }

    pub fn set_counit(&mut self, g: Gen, c: Coefficient) {
        self.counit[g as usize] = Some(c);
    }

    pub fn build(self) -> Result<HopfPresentation, HopfError> {
        let n = self.gens.len();
        for w in self.gens.windows(2) {
            if (w[0].class, w[0].index) >= (w[1].class, w[1].index) {
                return Err(HopfError::Build(format!(
                    "generators {} and {} are not in strictly increasing (class, index) order",
                    w[0].name, w[1].name
                )));
            }
        }
        for (i, a) in self.gens.iter().enumerate() {
            if self.gens[..i].iter().any(|b| b.name == a.name) {
                return Err(HopfError::Build(format!("duplicate generator name {}", a.name)));
            }
        }
        let mut rules: HashMap<(Gen, Gen), Rule> = HashMap::new();
        for (a, b, value) in self.brackets {
            if a == b {
                return Err(HopfError::Build("bracket of a generator with itself".into()));
            }
            // h g -> g h - [g, h] with h > g
            let (h, g, bracket_gh) = if a > b { (a, b, value.neg()) } else { (b, a, value) };
            let mut raw = AlgebraElement::word(&[g, h]);
            raw.add_assign(&bracket_gh.neg());
            if rules.insert((h, g), Rule { pair: (h, g), raw }).is_some() {
                return Err(HopfError::Build(format!(
                    "two brackets declared for {} and {}",
                    self.gens[a as usize].name, self.gens[b as usize].name
                )));
            }
        }
        let classes: Vec<u32> = self.gens.iter().map(|g| g.class).collect();
        for rule in rules.values() {
            let lhs = [rule.pair.0, rule.pair.1];
            let m_lhs = measure(&classes, &lhs);
            for (w, _) in rule.raw.terms() {
                if w.gens().iter().any(|&x| x as usize >= n) {
                    return Err(HopfError::Build("rule mentions an unknown generator".into()));
                }
                if measure(&classes, w.gens()) >= m_lhs {
                    return Err(HopfError::Build(format!(
                        "rule for {}{} violates the termination measure at word {}",
                        self.gens[lhs[0] as usize].name,
                        self.gens[lhs[1] as usize].name,
                        render_word(&self.gens, w)
                    )));
                }
            }
        }
        let delta = collect_maps(&self.gens, self.delta, "coproduct")?;
        let antipode = collect_maps(&self.gens, self.antipode, "antipode")?;
        let counit = collect_maps(&self.gens, self.counit, "counit")?;
        Ok(HopfPresentation {
            name: self.name,
            gens: self.gens,
            rules,
            delta,
            antipode,
            counit,
            ideal: None,
            caches: Caches::default(),
        })
    }
}

fn collect_maps<T>(gens: &[GeneratorSpec], v: Vec<Option<T>>, what: &str) -> Result<Vec<T>, HopfError> {
    v.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| HopfError::Build(format!("{} missing for {}", what, gens[i].name))))
        .collect()
}

/// Termination measure: (class inversions, degree, word order).
fn measure(classes: &[u32], w: &[Gen]) -> (usize, usize, Vec<Gen>) {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if classes[w[i] as usize] > classes[w[j] as usize] {
                inv += 1;
            }
        }
    }
    (inv, w.len(), w.to_vec())
}

#[derive(Default)]
struct Caches {
    products: Mutex<HashMap<(Word, Gen), AlgebraElement>>,
    rule_nf: Mutex<HashMap<(Gen, Gen), AlgebraElement>>,
    delta: Mutex<HashMap<Word, TensorElement>>,
    antipode: Mutex<HashMap<Word, AlgebraElement>>,
}

/// A presented Hopf algebra with a memoizing normal-ordering engine.
pub struct HopfPresentation {
    name: String,
    gens: Vec<GeneratorSpec>,
    rules: HashMap<(Gen, Gen), Rule>,
    delta: Vec<TensorElement>,
    antipode: Vec<AlgebraElement>,
    counit: Vec<Coefficient>,
    ideal: Option<Arc<dyn ResidualTest>>,
    caches: Caches,
}

impl HopfPresentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as Gen)
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.gens[g as usize].name
    }

    pub fn class_of(&self, g: Gen) -> u32 {
        self.gens[g as usize].class
    }

    /// Installs a residual test used by the axiom checks in place of the
    /// literal zero test when the literal test fails.
    pub fn with_residual_test(mut self, t: Arc<dyn ResidualTest>) -> Self {
        self.ideal = Some(t);
        self
    }

    pub fn residual_test(&self) -> Option<&Arc<dyn ResidualTest>> {
        self.ideal.as_ref()
    }

    /// Raw replacement for the out-of-order word `h g` (commuting by default).
    pub(crate) fn raw_replacement(&self, h: Gen, g: Gen) -> AlgebraElement {
        match self.rules.get(&(h, g)) {
            Some(r) => r.raw.clone(),
            None => AlgebraElement::word(&[g, h]),
        }
    }

    pub(crate) fn is_inverse_pair(&self, a: Gen, b: Gen) -> bool {
        self.gens[a as usize].inverse == Some(b)
    }

    /// Whether `w` is a normal word: nondecreasing and free of adjacent
    /// inverse pairs.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        w.gens().windows(2).all(|p| p[0] <= p[1] && !self.is_inverse_pair(p[0], p[1]))
    }

    fn check_gens(&self, w: &Word) -> Result<(), HopfError> {
        match w.gens().iter().find(|&&g| g as usize >= self.gens.len()) {
            Some(g) => Err(HopfError::Usage(format!(
                "generator handle {} does not belong to presentation {}",
                g, self.name
            ))),
            None => Ok(()),
        }
    }

    fn rule_nf(&self, h: Gen, g: Gen, depth: usize) -> Result<AlgebraElement, HopfError> {
        if let Some(r) = self.caches.rule_nf.lock().unwrap().get(&(h, g)) {
            return Ok(r.clone());
        }
        let raw = self.raw_replacement(h, g);
        let nf = self.normal_form_depth(&raw, depth + 1)?;
        self.caches.rule_nf.lock().unwrap().insert((h, g), nf.clone());
        Ok(nf)
    }

    /// Normal form of (normal word) * g.
    fn mul_word_gen(&self, w: &Word, g: Gen, depth: usize) -> Result<AlgebraElement, HopfError> {
        let h = match w.gens().last() {
            None => return Ok(AlgebraElement::gen(g)),
            Some(&h) => h,
        };
        let prefix = Word(w.gens()[..w.len() - 1].to_vec());
        if self.is_inverse_pair(h, g) {
            return Ok(AlgebraElement::term(Coefficient::one(), prefix));
        }
        if h <= g {
            let mut v = w.gens().to_vec();
            v.push(g);
            return Ok(AlgebraElement::word(&v));
        }
        let key = (w.clone(), g);
        if let Some(r) = self.caches.products.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        if depth > REWRITE_DEPTH_LIMIT {
            return Err(HopfError::Nontermination(vec![self.pair_name(h, g)]));
        }
        let rep = self.rule_nf(h, g, depth).map_err(|e| self.extend_chain(e, h, g))?;
        let mut out = AlgebraElement::zero();
        for (rw, c) in rep.terms() {
            let mut acc = AlgebraElement::term(c.clone(), prefix.clone());
            for &x in rw.gens() {
                acc = self.mul_elem_gen(&acc, x, depth + 1).map_err(|e| self.extend_chain(e, h, g))?;
            }
            out.add_assign(&acc);
        }
        self.caches.products.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn pair_name(&self, h: Gen, g: Gen) -> String {
        format!("{}*{}", self.gen_name(h), self.gen_name(g))
    }

    fn extend_chain(&self, e: HopfError, h: Gen, g: Gen) -> HopfError {
        match e {
            HopfError::Nontermination(mut chain) => {
                if chain.len() < 16 {
                    chain.push(self.pair_name(h, g));
                }
                HopfError::Nontermination(chain)
            }
            other => other,
        }
    }

    fn mul_elem_gen(&self, a: &AlgebraElement, g: Gen, depth: usize) -> Result<AlgebraElement, HopfError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            let p = self.mul_word_gen(w, g, depth)?;
            for (pw, pc) in p.terms() {
                out.add_term(pw.clone(), &pc.mul_ref(c));
            }
        }
        Ok(out)
    }

    fn normal_form_depth(&self, e: &AlgebraElement, depth: usize) -> Result<AlgebraElement, HopfError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in e.terms() {
            self.check_gens(w)?;
            let mut acc = AlgebraElement::scalar(c.clone());
            for &g in w.gens() {
                acc = self.mul_elem_gen(&acc, g, depth)?;
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Rewrites an arbitrary linear combination of words into normal form.
    pub fn normal_form(&self, e: &AlgebraElement) -> Result<AlgebraElement, HopfError> {
        self.normal_form_depth(e, 0)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, HopfError> {
        let normalized;
        let a = if a.terms().all(|(w, _)| self.is_normal_word(w)) {
            a
        } else {
            normalized = self.normal_form(a)?;
            &normalized
        };
        let mut out = AlgebraElement::zero();
        for (wb, cb) in b.terms() {
            self.check_gens(wb)?;
            let mut acc = a.scale(cb);
            for &g in wb.gens() {
                acc = self.mul_elem_gen(&acc, g, 0)?;
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, factors: &[AlgebraElement]) -> Result<AlgebraElement, HopfError> {
        let mut acc = AlgebraElement::one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, HopfError> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// Normal form of a single generator (for building expressions).
    pub fn gen(&self, g: Gen) -> AlgebraElement {
        AlgebraElement::gen(g)
    }

    /// Componentwise product of tensors of equal rank.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, HopfError> {
        if a.rank != b.rank {
            return Err(HopfError::Usage("tensor rank mismatch".into()));
        }
        let mut out = TensorElement::zero(a.rank);
        for (sa, ca) in a.terms() {
            for (sb, cb) in b.terms() {
                let c = ca.mul_ref(cb);
                let mut partial: Vec<(Vec<Word>, Coefficient)> = vec![(Vec::new(), c)];
                for (wa, wb) in sa.iter().zip(sb) {
                    let prod = self.multiply(&AlgebraElement::term(Coefficient::one(), wa.clone()), &AlgebraElement::term(Coefficient::one(), wb.clone()))?;
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (slots, pc) in &partial {
                        for (w, wc) in prod.terms() {
                            let mut s = slots.clone();
                            s.push(w.clone());
                            next.push((s, pc.mul_ref(wc)));
                        }
                    }
                    partial = next;
                }
                for (slots, c) in partial {
                    out.add_term(slots, &c);
                }
            }
        }
        Ok(out)
    }

    /// Normal-forms every slot of a tensor independently.
    pub fn tensor_normal_form(&self, t: &TensorElement) -> Result<TensorElement, HopfError> {
        let unit = TensorElement::unit(t.rank);
        let mut out = TensorElement::zero(t.rank);
        for (s, c) in t.terms() {
            let single = TensorElement::pure(c.clone(), s.clone());
            out.add_assign(&self.tensor_mul(&unit, &single)?);
        }
        Ok(out)
    }

    fn delta_word(&self, w: &Word) -> Result<TensorElement, HopfError> {
        if w.is_empty() {
            return Ok(TensorElement::unit(2));
        }
        if let Some(t) = self.caches.delta.lock().unwrap().get(w) {
            return Ok(t.clone());
        }
        let (last, prefix) = (w.gens()[w.len() - 1], Word(w.gens()[..w.len() - 1].to_vec()));
        let dp = self.delta_word(&prefix)?;
        let t = if prefix.is_empty() {
            self.tensor_normal_form(&self.delta[last as usize])?
        } else {
            self.tensor_mul(&dp, &self.delta[last as usize])?
        };
        self.caches.delta.lock().unwrap().insert(w.clone(), t.clone());
        Ok(t)
    }

    /// Coproduct, extended letter by letter as an algebra map. Accepts raw
    /// words, so both sides of a relation can be compared.
    pub fn coproduct(&self, a: &AlgebraElement) -> Result<TensorElement, HopfError> {
        let mut out = TensorElement::zero(2);
        for (w, c) in a.terms() {
            self.check_gens(w)?;
            out.add_assign(&self.delta_word(w)?.scale(c));
        }
        Ok(out)
    }

    fn antipode_word(&self, w: &Word) -> Result<AlgebraElement, HopfError> {
        if w.is_empty() {
            return Ok(AlgebraElement::one());
        }
        if let Some(t) = self.caches.antipode.lock().unwrap().get(w) {
            return Ok(t.clone());
        }
        let (last, prefix) = (w.gens()[w.len() - 1], Word(w.gens()[..w.len() - 1].to_vec()));
        let sp = self.antipode_word(&prefix)?;
        let r = self.multiply(&self.antipode[last as usize], &sp)?;
        self.caches.antipode.lock().unwrap().insert(w.clone(), r.clone());
        Ok(r)
    }

    /// Antipode, extended letter by letter as an anti-homomorphism.
    pub fn antipode(&self, a: &AlgebraElement) -> Result<AlgebraElement, HopfError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            self.check_gens(w)?;
            out.add_assign(&self.antipode_word(w)?.scale(c));
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &Word) -> Coefficient {
        let mut c = Coefficient::one();
        for &g in w.gens() {
            c = c.mul_ref(&self.counit[g as usize]);
            if c.is_zero() {
                break;
            }
        }
        c
    }

    /// Counit, extended multiplicatively.
    pub fn counit(&self, a: &AlgebraElement) -> Result<Coefficient, HopfError> {
        let mut out = Coefficient::zero();
        for (w, c) in a.terms() {
            self.check_gens(w)?;
            out = out.add_ref(&self.counit_word(w).mul_ref(c));
        }
        Ok(out)
    }

    pub fn generator_delta(&self, g: Gen) -> &TensorElement {
        &self.delta[g as usize]
    }

    pub fn generator_antipode(&self, g: Gen) -> &AlgebraElement {
        &self.antipode[g as usize]
    }

    pub fn generator_counit(&self, g: Gen) -> &Coefficient {
        &self.counit[g as usize]
    }

    /// Applies Δ to one slot of a tensor, raising its rank by one.
    pub fn delta_slot(&self, t: &TensorElement, slot: usize) -> Result<TensorElement, HopfError> {
        let mut out = TensorElement::zero(t.rank + 1);
        for (s, c) in t.terms() {
            let d = self.delta_word(&s[slot])?;
            for (ds, dc) in d.terms() {
                let mut slots = s[..slot].to_vec();
                slots.extend(ds.iter().cloned());
                slots.extend(s[slot + 1..].iter().cloned());
                out.add_term(slots, &c.mul_ref(dc));
            }
        }
        Ok(out)
    }

    /// Applies ε to one slot of a rank-2 tensor.
    pub fn counit_slot(&self, t: &TensorElement, slot: usize) -> Result<AlgebraElement, HopfError> {
        if t.rank != 2 {
            return Err(HopfError::Usage("counit_slot expects rank 2".into()));
        }
        let mut out = AlgebraElement::zero();
        for (s, c) in t.terms() {
            let e = self.counit_word(&s[slot]);
            out.add_term(s[1 - slot].clone(), &c.mul_ref(&e));
        }
        Ok(out)
    }

    /// m(S (x) id) when `left` is true, m(id (x) S) otherwise.
    pub fn antipode_multiply(&self, t: &TensorElement, left: bool) -> Result<AlgebraElement, HopfError> {
        if t.rank != 2 {
            return Err(HopfError::Usage("antipode_multiply expects rank 2".into()));
        }
        let mut out = AlgebraElement::zero();
        for (s, c) in t.terms() {
            let a = AlgebraElement::term(Coefficient::one(), s[0].clone());
            let b = AlgebraElement::term(Coefficient::one(), s[1].clone());
            let p = if left {
                self.multiply(&self.antipode(&a)?, &b)?
            } else {
                self.multiply(&a, &self.antipode(&b)?)?
            };
            out.add_assign(&p.scale(c));
        }
        Ok(out)
    }

    /// Literal zero test, falling back to the installed residual test.
    pub fn element_vanishes(&self, e: &AlgebraElement) -> bool {
        e.is_zero() || self.ideal.as_ref().is_some_and(|t| t.element_vanishes(e))
    }

    pub fn tensor_vanishes(&self, t: &TensorElement) -> bool {
        t.is_zero() || self.ideal.as_ref().is_some_and(|x| x.tensor_vanishes(t))
    }

    pub fn render_word(&self, w: &Word) -> String {
        render_word(&self.gens, w)
    }

    /// Canonical rendering: higher degree first, lexicographic within a degree.
    pub fn render(&self, e: &AlgebraElement) -> String {
        let mut terms: Vec<_> = e.terms().collect();
        terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.gens().cmp(b.gens())));
        render_sum(terms.into_iter().map(|(w, c)| (self.render_word(w), c)))
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        let mut terms: Vec<_> = t.terms().collect();
        let total = |s: &Vec<Word>| s.iter().map(Word::len).sum::<usize>();
        terms.sort_by(|(a, _), (b, _)| total(b).cmp(&total(a)).then_with(|| a.cmp(b)));
        render_sum(terms.into_iter().map(|(s, c)| {
            let parts: Vec<String> = s
                .iter()
                .map(|w| {
                    let r = self.render_word(w);
                    if r.is_empty() {
                        "1".to_string()
                    } else {
                        r
                    }
                })
                .collect();
            (format!("[{}]", parts.join(" (x) ")), c)
        }))
    }
}

fn render_word(gens: &[GeneratorSpec], w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let g = w.gens();
    let mut i = 0;
    while i < g.len() {
        let mut j = i;
        while j < g.len() && g[j] == g[i] {
            j += 1;
        }
        let name = &gens[g[i] as usize].name;
        if j - i == 1 {
            parts.push(name.clone());
        } else if let Some(base) = name.strip_suffix("^-1") {
            parts.push(format!("{}^-{}", base, j - i));
        } else {
            parts.push(format!("{}^{}", name, j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// Whether a coefficient renders with a leading minus sign.
pub(crate) fn is_negative(c: &Coefficient) -> bool {
    c.numerator().leading().is_some_and(|(_, g)| g.is_negative())
}

fn is_atomic(s: &str) -> bool {
    s.chars().all(|ch| ch.is_ascii_alphanumeric())
}

/// Renders `sum c_j * body_j` (an empty body denotes the unit).
pub fn render_sum<'a>(terms: impl Iterator<Item = (String, &'a Coefficient)>) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let neg = is_negative(c);
        let mag = if neg { c.neg_ref() } else { c.clone() };
        let cs = mag.to_string();
        let piece = if body.is_empty() {
            cs
        } else if mag.is_one() {
            body
        } else if is_atomic(&cs) {
            format!("{}*{}", cs, body)
        } else {
            format!("({})*{}", cs, body)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}
