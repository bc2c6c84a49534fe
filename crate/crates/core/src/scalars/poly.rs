//! Sparse multivariate polynomials over the Gaussian rationals, reduced modulo
//! `c^2 = 1 + s^2` and `q0^2 = q1^2 + q2^2 + q3^2 + m^2`.
//!
//! Every polynomial handed out by this module is reduced: its degree in `c`
//! and in `q0` is at most one. Two reduced polynomials are equal in the
//! quotient ring iff they are syntactically equal.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::Gauss;

/// Number of indeterminates in the shared polynomial ring.
pub const NVARS: usize = 24;

/// An indeterminate of the shared ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u8);

impl Var {
    pub const KAPPA: Var = Var(0);
    pub const MASS: Var = Var(1);
    pub const COSH: Var = Var(2);
    pub const SINH: Var = Var(3);
    pub const Q0: Var = Var(4);
    pub const Q1: Var = Var(5);
    pub const Q2: Var = Var(6);
    pub const Q3: Var = Var(7);
    /// Formal logarithm standing for the on-shell energy `p0 = k ln(u/m)`.
    pub const LOG: Var = Var(8);

    /// Number of symbolic plane-wave slots.
    pub const WAVES: usize = 3;

    /// Spatial hyperboloid coordinate `q_i`, `i` in 1..=3.
    pub fn q(i: usize) -> Var {
        assert!((1..=3).contains(&i));
        Var(4 + i as u8)
    }

    /// `p0` of symbolic wave `a` (a formal energy symbol).
    pub fn wave_energy(a: usize) -> Var {
        assert!(a < Self::WAVES);
        Var(9 + 5 * a as u8)
    }

    /// `E = exp(p0/k)` of symbolic wave `a`.
    pub fn wave_exp(a: usize) -> Var {
        assert!(a < Self::WAVES);
        Var(10 + 5 * a as u8)
    }

    /// Spatial momentum `p_j` of symbolic wave `a`, `j` in 1..=3.
    pub fn wave_momentum(a: usize, j: usize) -> Var {
        assert!(a < Self::WAVES && (1..=3).contains(&j));
        Var(10 + 5 * a as u8 + j as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "k".into(),
            1 => "m".into(),
            2 => "c".into(),
            3 => "s".into(),
            4..=7 => format!("q{}", self.0 - 4),
            8 => "l".into(),
            n => {
                let a = ((n - 9) / 5) as usize;
                let r = (n - 9) % 5;
                let primes = "'".repeat(a);
                match r {
                    0 => format!("p0{primes}"),
                    1 => format!("E{primes}"),
                    j => format!("p{}{primes}", j - 1),
                }
            }
        }
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

/// Exponent vector.
pub type Mono = [u8; NVARS];

pub const ONE_MONO: Mono = [0; NVARS];

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut r = *a;
    for (x, y) in r.iter_mut().zip(b.iter()) {
        *x = x.checked_add(*y).expect("exponent overflow");
    }
    r
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_div(b: &Mono, a: &Mono) -> Mono {
    let mut r = *b;
    for (x, y) in r.iter_mut().zip(a.iter()) {
        *x -= *y;
    }
    r
}

fn mono_degree(a: &Mono) -> u32 {
    a.iter().map(|&e| e as u32).sum()
}

/// A reduced polynomial: terms sorted by strictly descending lex monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Gauss)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(ONE_MONO, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u8) -> Self {
        let mut m = ONE_MONO;
        m[v.index()] = e;
        Poly::from_terms(vec![(m, Gauss::one())])
    }

    /// Builds a polynomial from arbitrary (possibly unreduced, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Gauss)>) -> Self {
        let mut acc: HashMap<Mono, Gauss> = HashMap::new();
        for (m, c) in terms {
            reduce_into(&mut acc, m, c);
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Mono, Gauss>) -> Self {
        let mut terms: Vec<(Mono, Gauss)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Builds from terms already reduced and free of duplicates; sorts.
    fn from_reduced_vec(mut terms: Vec<(Mono, Gauss)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Gauss)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ONE_MONO && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ONE_MONO)
    }

    pub fn constant_value(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 if self.terms[0].0 == ONE_MONO => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, Gauss)> {
        self.terms.first()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m[v.index()] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max().unwrap_or(0)
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m[v.index()] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, k: &Gauss) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(k))).collect() }
    }

    /// Multiplies by a monomial that introduces neither `c` nor `q0`.
    pub fn mul_mono_plain(&self, mono: &Mono) -> Poly {
        debug_assert!(mono[Var::COSH.index()] == 0 && mono[Var::Q0.index()] == 0);
        Poly { terms: self.terms.iter().map(|(m, c)| (mono_mul(m, mono), c.clone())).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        merge(&self.terms, &o.terms, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        merge(&self.terms, &o.terms, true)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut acc: HashMap<Mono, Gauss> = HashMap::with_capacity(self.len() * o.len());
        let needs_reduction = (self.has_var(Var::COSH) && o.has_var(Var::COSH))
            || (self.has_var(Var::Q0) && o.has_var(Var::Q0));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = mono_mul(ma, mb);
                let c = ca.mul_ref(cb);
                if needs_reduction {
                    reduce_into(&mut acc, m, c);
                } else {
                    acc.entry(m).and_modify(|e| *e += &c).or_insert(c);
                }
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Conjugate with respect to a quadratic variable (`c` or `q0`):
    /// `p0 + v p1  ->  p0 - v p1`.
    pub fn conjugate(&self, v: Var) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| if m[v.index()] % 2 == 1 { (*m, -c.clone()) } else { (*m, c.clone()) })
                .collect(),
        }
    }

    /// Exact division by a polynomial free of `c` and `q0`; `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        debug_assert!(!d.has_var(Var::COSH) && !d.has_var(Var::Q0));
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dl_m, dl_c) = d.terms[0].clone();
        let dl_inv = dl_c.inv().expect("nonzero leading coefficient");
        if d.terms.len() == 1 {
            // monomial divisor
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !mono_divides(&dl_m, m) {
                    return None;
                }
                out.push((mono_div(m, &dl_m), c.mul_ref(&dl_inv)));
            }
            return Some(Poly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Gauss)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !mono_divides(&dl_m, &rm) {
                return None;
            }
            let qm = mono_div(&rm, &dl_m);
            let qc = rc.mul_ref(&dl_inv);
            let t = Poly { terms: d.terms.iter().map(|(m, c)| (mono_mul(m, &qm), c.mul_ref(&qc))).collect() };
            rem = rem.sub(&t);
            quot.push((qm, qc));
        }
        Some(Poly::from_reduced_vec(quot))
    }

    /// Formal partial derivative (reduced polynomials stay reduced).
    pub fn partial(&self, v: Var) -> Poly {
        let i = v.index();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2[i] -= 1;
                (m2, c.mul_ref(&Gauss::from_int(m[i] as i64)))
            })
            .collect();
        Poly::from_reduced_vec(terms)
    }

    /// Substitutes `v := value` (the value is reduced; the result is reduced).
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let i = v.index();
        if !self.has_var(v) {
            return self.clone();
        }
        let maxe = self.degree_in(v) as usize;
        let mut powers = vec![Poly::one()];
        for k in 1..=maxe {
            let next = powers[k - 1].mul(value);
            powers.push(next);
        }
        let mut groups: HashMap<u8, Vec<(Mono, Gauss)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2[i];
            m2[i] = 0;
            groups.entry(e).or_default().push((m2, c.clone()));
        }
        let mut keys: Vec<u8> = groups.keys().copied().collect();
        keys.sort_unstable();
        let mut acc = Poly::zero();
        for e in keys {
            let part = Poly::from_terms(groups.remove(&e).unwrap());
            acc = acc.add(&part.mul(&powers[e as usize]));
        }
        acc
    }

    /// Coefficients with respect to powers of `v`: `(exponent, coefficient)`.
    pub fn collect_var(&self, v: Var) -> Vec<(u32, Poly)> {
        let i = v.index();
        let mut groups: HashMap<u8, Vec<(Mono, Gauss)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2[i];
            m2[i] = 0;
            groups.entry(e).or_default().push((m2, c.clone()));
        }
        let mut out: Vec<(u32, Poly)> =
            groups.into_iter().map(|(e, ts)| (e as u32, Poly::from_reduced_vec(ts))).collect();
        out.sort_by_key(|(e, _)| *e);
        out
    }

    /// Minimum exponent of every variable over all terms.
    pub fn monomial_content(&self) -> Mono {
        let mut m = match self.terms.first() {
            Some((m, _)) => *m,
            None => return ONE_MONO,
        };
        for (t, _) in &self.terms[1..] {
            for (a, b) in m.iter_mut().zip(t.iter()) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides every term by a monomial known to divide all terms.
    pub fn div_mono(&self, mono: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (mono_div(m, mono), c.clone())).collect() }
    }

    pub fn leading_coefficient(&self) -> Gauss {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Gauss::zero)
    }

    /// Scales so the leading coefficient is one; returns the removed factor.
    pub fn make_monic(&self) -> (Gauss, Poly) {
        let lc = self.leading_coefficient();
        let inv = lc.inv().expect("monic of zero polynomial");
        (lc, self.scale(&inv))
    }

    /// Whether the polynomial depends only on the listed variables.
    pub fn only_vars(&self, allowed: &[Var]) -> bool {
        self.terms.iter().all(|(m, _)| {
            m.iter().enumerate().all(|(i, &e)| e == 0 || allowed.iter().any(|v| v.index() == i))
        })
    }

    /// Applies `f` to every coefficient (e.g. complex conjugation).
    pub fn map_coefficients(&self, f: impl Fn(&Gauss) -> Gauss) -> Poly {
        Poly::from_reduced_vec(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Terms of this polynomial as a list of `(monomial, coefficient)`.
    pub fn into_terms(self) -> Vec<(Mono, Gauss)> {
        self.terms
    }
}

fn merge(a: &[(Mono, Gauss)], b: &[(Mono, Gauss)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 > b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 > a[i].0 {
            let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { a[i].1.clone() - b[j].1.clone() } else { a[i].1.add_ref(&b[j].1) };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    Poly { terms: out }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Adds `c * mono` into `acc` after applying `c^2 -> 1 + s^2` and
/// `q0^2 -> q1^2 + q2^2 + q3^2 + m^2`.
fn reduce_into(acc: &mut HashMap<Mono, Gauss>, mono: Mono, c: Gauss) {
    let ci = Var::COSH.index();
    let qi = Var::Q0.index();
    if mono[ci] < 2 && mono[qi] < 2 {
        acc.entry(mono).and_modify(|e| *e += &c).or_insert(c);
        return;
    }
    // c^(2k+r) = (1+s^2)^k c^r
    let mut stage: Vec<(Mono, Gauss)> = Vec::new();
    if mono[ci] >= 2 {
        let k = (mono[ci] / 2) as u32;
        let mut base = mono;
        base[ci] %= 2;
        for j in 0..=k {
            let mut m = base;
            m[Var::SINH.index()] += 2 * j as u8;
            let coef = Gauss::from_rational(BigRational::from_integer(binomial(k, j)));
            stage.push((m, c.mul_ref(&coef)));
        }
    } else {
        stage.push((mono, c));
    }
    for (m, cc) in stage {
        if m[qi] < 2 {
            acc.entry(m).and_modify(|e| *e += &cc).or_insert(cc);
            continue;
        }
        // q0^(2k+r) = (q1^2 + q2^2 + q3^2 + m^2)^k q0^r, expanded multinomially
        let k = (m[qi] / 2) as u32;
        let mut base = m;
        base[qi] %= 2;
        let idx = [Var::Q1.index(), Var::Q2.index(), Var::Q3.index(), Var::MASS.index()];
        for a in 0..=k {
            for b in 0..=(k - a) {
                for d in 0..=(k - a - b) {
                    let e = k - a - b - d;
                    let coef = binomial(k, a) * binomial(k - a, b) * binomial(k - a - b, d);
                    let mut mm = base;
                    mm[idx[0]] += 2 * a as u8;
                    mm[idx[1]] += 2 * b as u8;
                    mm[idx[2]] += 2 * d as u8;
                    mm[idx[3]] += 2 * e as u8;
                    let v = cc.mul_ref(&Gauss::from_rational(BigRational::from_integer(coef)));
                    acc.entry(mm).and_modify(|x| *x += &v).or_insert(v);
                }
            }
        }
    }
}

pub(crate) fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in Var::all() {
        let e = m[v.index()];
        if e == 1 {
            parts.push(v.name());
        } else if e > 1 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative() && (c.im.is_zero() || c.re.is_zero());
            let c_abs = if neg { -c.clone() } else { c.clone() };
            let ms = fmt_mono(m);
            let body = if ms.is_empty() {
                c_abs.to_string()
            } else if c_abs.is_one() {
                ms
            } else {
                format!("{}*{}", c_abs, ms)
            };
            if n == 0 {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn hyperbolic_relation_reduces_to_one() {
        let c = v(Var::COSH);
        let s = v(Var::SINH);
        let r = c.mul(&c).sub(&s.mul(&s));
        assert!(r.is_one());
    }

    #[test]
    fn shell_relation_reduces_to_zero() {
        let q0 = v(Var::Q0);
        let mut r = q0.mul(&q0);
        for i in 1..=3 {
            let qi = v(Var::q(i));
            r = r.sub(&qi.mul(&qi));
        }
        let m = v(Var::MASS);
        r = r.sub(&m.mul(&m));
        assert!(r.is_zero());
    }

    #[test]
    fn exact_division() {
        let k = v(Var::KAPPA);
        let m = v(Var::MASS);
        let a = k.add(&m);
        let b = k.sub(&m);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&Poly::one()).div_exact(&a), None);
    }

    #[test]
    fn high_powers_reduce() {
        let c = v(Var::COSH);
        let s = v(Var::SINH);
        let c4 = c.pow(4);
        let expected = Poly::one().add(&s.mul(&s)).pow(2);
        assert_eq!(c4, expected);
    }

    #[test]
    fn names() {
        assert_eq!(Var::wave_exp(1).name(), "E'");
        assert_eq!(Var::wave_momentum(0, 2).name(), "p2");
        assert_eq!(Var::wave_energy(2).name(), "p0''");
    }
}
