use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::scalars::Coefficient;

/// Generator handle: position in the presentation's total order.
pub type Gen = u16;

/// A word of generators. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Word) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Word) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite linear combination of words.
///
/// Elements produced by a presentation's operations are in normal form; raw
/// elements (arbitrary words) are accepted by `normal_form`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    pub(crate) terms: BTreeMap<Word, Coefficient>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(Coefficient::one())
    }

    pub fn scalar(c: Coefficient) -> Self {
        AlgebraElement::term(c, Word::empty())
    }

    pub fn term(c: Coefficient, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        AlgebraElement { terms }
    }

    pub fn gen(g: Gen) -> Self {
        AlgebraElement::term(Coefficient::one(), Word::single(g))
    }

    pub fn word(gens: &[Gen]) -> Self {
        AlgebraElement::term(Coefficient::one(), Word(gens.to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Coefficient of the empty word when the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Maximal word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let s = e.add_ref(c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &AlgebraElement) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Coefficient::from_int(-1))
    }

    pub fn scale(&self, c: &Coefficient) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul_ref(c))).collect() }
    }

    /// Word-concatenation product without normal ordering (raw expressions).
    pub fn concat_word(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (wa, ca) in self.terms() {
            for (wb, cb) in o.terms() {
                out.add_term(wa.concat(wb), &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Applies a map to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }
}

/// Finite sum of pure tensors of words, rank 2 or 3.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    pub(crate) rank: usize,
    pub(crate) terms: BTreeMap<Vec<Word>, Coefficient>,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        TensorElement { rank, terms: BTreeMap::new() }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(rank: usize) -> Self {
        TensorElement::pure(Coefficient::one(), vec![Word::empty(); rank])
    }

    pub fn pure(c: Coefficient, slots: Vec<Word>) -> Self {
        let rank = slots.len();
        let mut t = TensorElement::zero(rank);
        t.add_term(slots, &c);
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: &Coefficient) {
        assert_eq!(slots.len(), self.rank, "tensor rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slots) {
            Some(e) => {
                let s = e.add_ref(c);
                if s.is_zero() {
                    self.terms.remove(&slots);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(slots, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &TensorElement) {
        for (s, c) in &o.terms {
            self.add_term(s.clone(), c);
        }
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        self.add(&o.scale(&Coefficient::from_int(-1)))
    }

    pub fn scale(&self, c: &Coefficient) -> TensorElement {
        let mut r = TensorElement::zero(self.rank);
        for (s, x) in &self.terms {
            r.add_term(s.clone(), &x.mul_ref(c));
        }
        r
    }

    /// Pure tensor `a (x) b` of two elements.
    pub fn tensor(a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                t.add_term(vec![wa.clone(), wb.clone()], &ca.mul_ref(cb));
            }
        }
        t
    }
}
