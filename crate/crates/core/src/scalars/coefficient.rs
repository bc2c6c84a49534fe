//! Exact fractions over the reduced polynomial ring.
//!
//! A `Coefficient` is `num / (a_1^k_1 ... a_n^k_n)` where `num` is a reduced
//! polynomial and every denominator atom `a_j` is a monic polynomial free of
//! `c` and `q0`. Denominators are made free of `c` and `q0` by multiplying
//! through with conjugates, so `1/(c - s)` becomes `c + s`. Common atom
//! factors are cancelled from the numerator by exact division.
//!
//! Canonical forms are reduced by content and by known atoms, not by a full
//! multivariate gcd, so two equal values may carry different atom sets.
//! Equality is therefore decided by cross-multiplication: `a == b` iff the
//! numerator of `a - b` reduces to zero. Zero always normalizes to the
//! literal `0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gauss::Gauss;
use super::poly::{Mono, Poly, Var, ONE_MONO};
use super::ScalarError;

/// A monic denominator factor free of `c` and `q0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(Arc<Poly>);

impl Atom {
    fn new(p: Poly) -> Atom {
        Atom(Arc::new(p))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    fn single_var(&self) -> Option<Var> {
        let p = &*self.0;
        if p.len() != 1 {
            return None;
        }
        let (m, _) = &p.terms()[0];
        let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
        if nz.len() == 1 && m[nz[0]] == 1 {
            Some(Var(nz[0] as u8))
        } else {
            None
        }
    }

    /// Whether `p` is divisible by this atom; returns the quotient.
    fn divide(&self, p: &Poly) -> Option<Poly> {
        if let Some(v) = self.single_var() {
            let i = v.index();
            if p.terms().iter().all(|(m, _)| m[i] > 0) {
                let mut mono = ONE_MONO;
                mono[i] = 1;
                return Some(p.div_mono(&mono));
            }
            return None;
        }
        p.div_exact(&self.0)
    }
}

/// An exact scalar: a fraction over the shared polynomial ring.
#[derive(Clone, Debug)]
pub struct Coefficient {
    num: Poly,
    den: Vec<(Atom, u32)>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Coefficient::from_poly(Poly::one())
    }

    pub fn i() -> Self {
        Coefficient::from_gauss(Gauss::i())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::from_gauss(Gauss::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coefficient::from_gauss(Gauss::from_ratio(n, d))
    }

    pub fn from_gauss(g: Gauss) -> Self {
        Coefficient::from_poly(Poly::constant(g))
    }

    pub fn from_poly(p: Poly) -> Self {
        Coefficient { num: p, den: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Coefficient::from_poly(Poly::var(v))
    }

    pub fn kappa() -> Self {
        Coefficient::var(Var::KAPPA)
    }

    pub fn mass() -> Self {
        Coefficient::var(Var::MASS)
    }

    pub fn cosh() -> Self {
        Coefficient::var(Var::COSH)
    }

    pub fn sinh() -> Self {
        Coefficient::var(Var::SINH)
    }

    /// `1/k`.
    pub fn inv_kappa() -> Self {
        Coefficient::kappa().inv().expect("k is nonzero")
    }

    /// Normalizes a raw fraction of polynomials.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        Coefficient::from_poly(num).checked_div(&Coefficient::from_poly(den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_atoms(&self) -> &[(Atom, u32)] {
        &self.den
    }

    /// The denominator expanded into a single polynomial.
    pub fn denominator(&self) -> Poly {
        let mut d = Poly::one();
        for (a, k) in &self.den {
            d = d.mul(&a.poly().pow(*k));
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The value as a Gaussian rational when it is constant.
    pub fn as_constant(&self) -> Option<Gauss> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.num.has_var(v) || self.den.iter().any(|(a, _)| a.poly().has_var(v))
    }

    /// Whether numerator and denominator only involve the listed variables.
    pub fn only_vars(&self, allowed: &[Var]) -> bool {
        self.num.only_vars(allowed) && self.den.iter().all(|(a, _)| a.poly().only_vars(allowed))
    }

    pub fn scale(&self, g: &Gauss) -> Self {
        if g.is_zero() {
            return Coefficient::zero();
        }
        Coefficient { num: self.num.scale(g), den: self.den.clone() }
    }

    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (atom, k) in self.den.iter_mut() {
            while *k > 0 {
                match atom.divide(&self.num) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
        self
    }

    fn merge_den(a: &[(Atom, u32)], b: &[(Atom, u32)], add: bool) -> Vec<(Atom, u32)> {
        let mut out: Vec<(Atom, u32)> = a.to_vec();
        for (atom, k) in b {
            match out.iter_mut().find(|(x, _)| x == atom) {
                Some((_, e)) => {
                    if add {
                        *e += k;
                    } else {
                        *e = (*e).max(*k);
                    }
                }
                None => out.push((atom.clone(), *k)),
            }
        }
        out.sort();
        out
    }

    fn den_quotient(full: &[(Atom, u32)], part: &[(Atom, u32)]) -> Poly {
        let mut p = Poly::one();
        for (atom, k) in full {
            let have = part.iter().find(|(x, _)| x == atom).map(|(_, e)| *e).unwrap_or(0);
            if *k > have {
                p = p.mul(&atom.poly().pow(k - have));
            }
        }
        p
    }

    pub fn add_ref(&self, o: &Coefficient) -> Coefficient {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Coefficient { num: self.num.add(&o.num), den: self.den.clone() }.cancel();
        }
        let den = Coefficient::merge_den(&self.den, &o.den, false);
        let a = self.num.mul(&Coefficient::den_quotient(&den, &self.den));
        let b = o.num.mul(&Coefficient::den_quotient(&den, &o.den));
        Coefficient { num: a.add(&b), den }.cancel()
    }

    pub fn sub_ref(&self, o: &Coefficient) -> Coefficient {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Coefficient {
        Coefficient { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &Coefficient) -> Coefficient {
        if self.is_zero() || o.is_zero() {
            return Coefficient::zero();
        }
        if o.den.is_empty() && o.num.is_constant() {
            return self.scale(&o.num.constant_value().unwrap());
        }
        if self.den.is_empty() && self.num.is_constant() {
            return o.scale(&self.num.constant_value().unwrap());
        }
        let den = Coefficient::merge_den(&self.den, &o.den, true);
        Coefficient { num: self.num.mul(&o.num), den }.cancel()
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        let mut r = Coefficient::one();
        for _ in 0..e {
            r = r.mul_ref(self);
        }
        r
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i32) -> Result<Coefficient, ScalarError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Coefficient, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // make the numerator free of c and q0 by conjugation
        let mut n = self.num.clone();
        let mut cofactor = Poly::one();
        for v in [Var::COSH, Var::Q0] {
            if n.has_var(v) {
                let conj = n.conjugate(v);
                n = n.mul(&conj);
                cofactor = cofactor.mul(&conj);
            }
        }
        debug_assert!(!n.is_zero());
        let (konst, atoms) = factor_denominator(&n, &self.den);
        let mut num = cofactor.scale(&konst.inv().expect("nonzero constant"));
        for (a, k) in &self.den {
            num = num.mul(&a.poly().pow(*k));
        }
        Ok(Coefficient { num, den: atoms }.cancel())
    }

    pub fn checked_div(&self, o: &Coefficient) -> Result<Coefficient, ScalarError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Applies a derivation given by its values on the variables.
    pub fn derive(&self, image: &dyn Fn(Var) -> Option<Coefficient>) -> Coefficient {
        let dpoly = |p: &Poly| -> Coefficient {
            let mut acc = Coefficient::zero();
            for v in Var::all() {
                if !p.has_var(v) {
                    continue;
                }
                if let Some(dv) = image(v) {
                    if dv.is_zero() {
                        continue;
                    }
                    acc = acc.add_ref(&Coefficient::from_poly(p.partial(v)).mul_ref(&dv));
                }
            }
            acc
        };
        let mut result = dpoly(&self.num);
        if self.den.is_empty() {
            return result;
        }
        let den = Coefficient { num: Poly::one(), den: self.den.clone() };
        result = result.mul_ref(&den);
        // d(1/a^k) = -k a' / a^{k+1}
        let this = self.clone();
        for (a, k) in &self.den {
            let da = dpoly(a.poly());
            if da.is_zero() {
                continue;
            }
            let inv_a = Coefficient { num: Poly::one(), den: vec![(a.clone(), 1)] };
            let term = this.mul_ref(&da).mul_ref(&inv_a).scale(&Gauss::from_int(*k as i64));
            result = result.sub_ref(&term);
        }
        result
    }

    /// Formal partial derivative with respect to one variable (no chain terms).
    pub fn partial(&self, v: Var) -> Coefficient {
        self.derive(&|w| if w == v { Some(Coefficient::one()) } else { None })
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: Var, value: &Coefficient) -> Result<Coefficient, ScalarError> {
        self.substitute_all(&|w| if w == v { Some(value.clone()) } else { None })
    }

    /// Substitutes several variables at once.
    pub fn substitute_all(
        &self,
        map: &dyn Fn(Var) -> Option<Coefficient>,
    ) -> Result<Coefficient, ScalarError> {
        let sub_poly = |p: &Poly| -> Coefficient {
            let mut acc = Coefficient::zero();
            for (m, c) in p.terms() {
                let mut t = Coefficient::from_gauss(c.clone());
                let mut plain = ONE_MONO;
                for v in Var::all() {
                    let e = m[v.index()];
                    if e == 0 {
                        continue;
                    }
                    match map(v) {
                        Some(val) => t = t.mul_ref(&val.pow(e as u32)),
                        None => plain[v.index()] = e,
                    }
                }
                let plain_poly = Poly::from_terms(vec![(plain, Gauss::one())]);
                acc = acc.add_ref(&t.mul_ref(&Coefficient::from_poly(plain_poly)));
            }
            acc
        };
        let mut result = sub_poly(&self.num);
        for (a, k) in &self.den {
            let av = sub_poly(a.poly());
            if av.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            result = result.checked_div(&av.pow(*k))?;
        }
        Ok(result)
    }

    /// Complex conjugate of every Gaussian coefficient (formal symbols are real).
    pub fn conj(&self) -> Coefficient {
        Coefficient {
            num: self.num.map_coefficients(|g| g.conj()),
            den: self
                .den
                .iter()
                .map(|(a, k)| (Atom::new(a.poly().map_coefficients(|g| g.conj())), *k))
                .collect(),
        }
    }

    /// Polynomial degree of the numerator minus that of the denominator in `v`.
    pub fn degree_in(&self, v: Var) -> i64 {
        let dn = self.num.degree_in(v) as i64;
        let dd: i64 = self.den.iter().map(|(a, k)| a.poly().degree_in(v) as i64 * *k as i64).sum();
        dn - dd
    }
}

/// Splits a nonzero `c`/`q0`-free polynomial into a constant and monic atoms.
fn factor_denominator(n: &Poly, hints: &[(Atom, u32)]) -> (Gauss, Vec<(Atom, u32)>) {
    let mut atoms: Vec<(Atom, u32)> = Vec::new();
    let content = n.monomial_content();
    let mut rest = n.div_mono(&content);
    for v in Var::all() {
        let e = content[v.index()];
        if e > 0 {
            atoms.push((Atom::new(Poly::var(v)), e as u32));
        }
    }
    let (lc, monic) = rest.make_monic();
    rest = monic;
    if !rest.is_constant() {
        for (h, _) in hints {
            if h.single_var().is_some() {
                continue;
            }
            let mut e = 0;
            while let Some(q) = h.divide(&rest) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                atoms.push((h.clone(), e));
            }
        }
        if !rest.is_constant() {
            let (lc2, monic) = rest.make_monic();
            debug_assert!(lc2.is_one());
            atoms.push((Atom::new(monic), 1));
        }
    }
    atoms.sort();
    // merge duplicates
    let mut merged: Vec<(Atom, u32)> = Vec::new();
    for (a, k) in atoms {
        match merged.last_mut() {
            Some((b, e)) if *b == a => *e += k,
            _ => merged.push((a, k)),
        }
    }
    (lc, merged)
}

impl PartialEq for Coefficient {
    fn eq(&self, o: &Coefficient) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.sub_ref(o).is_zero()
    }
}

impl Eq for Coefficient {}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, o: Coefficient) -> Coefficient {
        self.add_ref(&o)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, o: &Coefficient) -> Coefficient {
        self.add_ref(o)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, o: Coefficient) -> Coefficient {
        self.sub_ref(&o)
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, o: &Coefficient) -> Coefficient {
        self.sub_ref(o)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, o: Coefficient) -> Coefficient {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, o: &Coefficient) -> Coefficient {
        self.mul_ref(o)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<Gauss> for Coefficient {
    fn from(g: Gauss) -> Self {
        Coefficient::from_gauss(g)
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient::from_gauss(Gauss::from_rational(r))
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient::from(BigRational::from_integer(n))
    }
}

fn needs_parens(p: &Poly) -> bool {
    // atoms are monic, so a single-term atom is a bare monomial
    p.len() > 1
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(a, k)| {
                let base = if needs_parens(a.poly()) { format!("({})", a.poly()) } else { a.poly().to_string() };
                if *k == 1 {
                    base
                } else {
                    format!("{}^{}", base, k)
                }
            })
            .collect();
        if parts.len() == 1 {
            write!(f, "{}/{}", num, parts[0])
        } else {
            write!(f, "{}/({})", num, parts.join("*"))
        }
    }
}

/// Builds a monomial from `(variable, exponent)` pairs.
pub fn mono_of(pairs: &[(Var, u8)]) -> Mono {
    let mut m = ONE_MONO;
    for (v, e) in pairs {
        m[v.index()] += *e;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Coefficient {
        Coefficient::kappa()
    }
    fn m() -> Coefficient {
        Coefficient::mass()
    }
    fn c() -> Coefficient {
        Coefficient::cosh()
    }
    fn s() -> Coefficient {
        Coefficient::sinh()
    }

    #[test]
    fn hyperbolic_identity_normalizes_to_one() {
        let x = &(&c() * &c()) - &(&s() * &s());
        assert!(x.is_one());
    }

    #[test]
    fn common_factor_cancels() {
        let num = &(&m() * &c()) - &(&m() * &s());
        let den = &c() - &s();
        let r = num.checked_div(&den).unwrap();
        assert_eq!(r.to_string(), "m");
    }

    #[test]
    fn inverse_of_c_minus_s() {
        // (c - s)(c + s) = c^2 - s^2 = 1
        let r = Coefficient::one().checked_div(&(&c() - &s())).unwrap();
        assert!(r.denominator_atoms().is_empty());
        assert_eq!(r, &c() + &s());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = &(&c() * &c()) - &(&(&s() * &s()) + &Coefficient::one());
        assert_eq!(Coefficient::one().checked_div(&z), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn fraction_arithmetic() {
        let a = Coefficient::i().checked_div(&k()).unwrap();
        assert_eq!(a.to_string(), "i/k");
        let b = &a * &a;
        assert_eq!(b, Coefficient::from_int(-1).checked_div(&(&k() * &k())).unwrap());
        let z = &(&a + &k()) - &k();
        assert_eq!(z, a);
    }

    #[test]
    fn derivative_quotient_rule() {
        let x = Coefficient::one().checked_div(&(&k() + &m())).unwrap();
        let d = x.partial(Var::KAPPA);
        let expected = Coefficient::from_int(-1).checked_div(&(&k() + &m()).pow(2)).unwrap();
        assert_eq!(d, expected);
    }
}
