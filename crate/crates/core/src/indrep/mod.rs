//! Infinitesimal induced representation on the mass hyperboloid.
//!
//! Functions on the shell are plain [`Coefficient`]s in `q0..q3`; the ring
//! already reduces `q0^2 = q1^2 + q2^2 + q3^2 + m^2`. The on-shell energy
//! `p0 = k ln(u/m)`, `u = m c - q0 s`, is the formal symbol `l` with
//! `d l/dq_i = -k s q_i / (q0 u)`.
//!
//! Sign table. Coordinates `q_i` carry lower indices and `D_i = d/dq_i`, so
//! `d/dq^i = -D_i`. Then
//!
//! ```text
//! M_ij = -i(q_i D_j - q_j D_i) + eps_ijk s_k
//! M_i0 =  i q0 D_i + eps_ijk q_j s_k / (q0 + m)
//! P_0  =  l,   P_j = -k s q_j / u,   A = exp(-P_0/k) = m/u
//! ```
//!
//! Flipping the orbital sign of `M_ij` is the negative control.

use rayon::prelude::*;
use thiserror::Error;

use crate::hopfcore::{AlgebraElement, Gen};
use crate::kalgebra::{build_kalgebra, KAlgebra, Kind};
use crate::metric::levi_civita;
use crate::report::CheckRecord;
use crate::scalars::{coeff_series, Coefficient, ScalarError, Var};

pub const CLOSURE_SUITE: &str = "rep-closure";
pub const SHELL_SUITE: &str = "momentum-shell";

/// Functions on the hyperboloid.
pub type QFunction = Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndRepError {
    #[error("product of two log-bearing multiplication parts")]
    LogSquared,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Zero,
    Half,
    One,
}

impl Spin {
    pub fn dim(self) -> usize {
        match self {
            Spin::Zero => 1,
            Spin::Half => 2,
            Spin::One => 3,
        }
    }

    pub fn parse(s: &str) -> Option<Spin> {
        match s {
            "0" => Some(Spin::Zero),
            "1/2" | "0.5" => Some(Spin::Half),
            "1" => Some(Spin::One),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Spin::Zero => "0",
            Spin::Half => "1/2",
            Spin::One => "1",
        }
    }
}

/// Sign of the orbital part of `M_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrbitalSign {
    #[default]
    Standard,
    Flipped,
}

/// How `A = exp(-P0/k)` is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExpRealization {
    /// `m/u`, which follows from `P0 = k ln(u/m)`.
    #[default]
    MOverU,
    /// `u/m`.
    UOverM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RepConvention {
    pub orbital: OrbitalSign,
    pub exp: ExpRealization,
}

/// Square matrix with function entries, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    e: Vec<QFunction>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix { n, e: vec![Coefficient::zero(); n * n] }
    }

    pub fn scalar(n: usize, f: &QFunction) -> Self {
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            m.e[i * n + i] = f.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QFunction {
        &self.e[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    fn zip(&self, o: &QMatrix, f: impl Fn(&QFunction, &QFunction) -> QFunction) -> QMatrix {
        QMatrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        self.zip(o, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        self.zip(o, |a, b| a.sub_ref(b))
    }

    pub fn scale(&self, c: &QFunction) -> QMatrix {
        QMatrix { n: self.n, e: self.e.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn map(&self, f: impl Fn(&QFunction) -> QFunction) -> QMatrix {
        QMatrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &QMatrix) -> Result<QMatrix, IndRepError> {
        let n = self.n;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Coefficient::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    if has_log(a) && has_log(b) {
                        return Err(IndRepError::LogSquared);
                    }
                    acc = acc.add_ref(&a.mul_ref(b));
                }
                out.e[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &QMatrix) -> Result<QMatrix, IndRepError> {
        Ok(self.mul(o)?.sub(&o.mul(self)?))
    }
}

fn has_log(f: &QFunction) -> bool {
    f.has_var(Var::LOG)
}

fn c(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

fn q(i: usize) -> Coefficient {
    if i == 0 {
        Coefficient::var(Var::Q0)
    } else {
        Coefficient::var(Var::q(i))
    }
}

/// `u = m c - q0 s`.
pub fn u_function() -> QFunction {
    let (m, ch, sh) = (Coefficient::mass(), Coefficient::cosh(), Coefficient::sinh());
    m.mul_ref(&ch).sub_ref(&q(0).mul_ref(&sh))
}

/// Derivative along `q_i` on the shell (chain rule through `q0` and `l`).
pub fn qderive(f: &QFunction, i: usize) -> QFunction {
    assert!((1..=3).contains(&i));
    let u = u_function();
    f.derive(&|v| {
        if v == Var::q(i) {
            Some(Coefficient::one())
        } else if v == Var::Q0 {
            Some(q(i).checked_div(&q(0)).expect("q0 is invertible"))
        } else if v == Var::LOG {
            let num = Coefficient::kappa().mul_ref(&Coefficient::sinh()).mul_ref(&q(i)).neg_ref();
            Some(num.checked_div(&q(0).mul_ref(&u)).expect("q0 u is invertible"))
        } else {
            None
        }
    })
}

/// `s_1, s_2, s_3` for the given spin.
#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub s: [QMatrix; 3],
}

impl SpinMatrices {
    pub fn new(spin: Spin) -> Self {
        let n = spin.dim();
        let build = |k: usize| -> QMatrix {
            let mut m = QMatrix::zero(n);
            match spin {
                Spin::Zero => {}
                Spin::Half => {
                    let half = Coefficient::from_ratio(1, 2);
                    let ih = Coefficient::i().mul_ref(&half);
                    let entries: [[Coefficient; 2]; 2] = match k {
                        1 => [[c(0), half.clone()], [half.clone(), c(0)]],
                        2 => [[c(0), ih.neg_ref()], [ih.clone(), c(0)]],
                        _ => [[half.clone(), c(0)], [c(0), half.neg_ref()]],
                    };
                    for (a, row) in entries.iter().enumerate() {
                        for (b, x) in row.iter().enumerate() {
                            m.e[a * 2 + b] = x.clone();
                        }
                    }
                }
                Spin::One => {
                    // (s_k)_{ab} = -i eps_kab
                    for a in 0..3 {
                        for b in 0..3 {
                            let e = levi_civita(k, a + 1, b + 1);
                            m.e[a * 3 + b] = Coefficient::i().mul_ref(&c(-e));
                        }
                    }
                }
            }
            m
        };
        SpinMatrices { s: [build(1), build(2), build(3)] }
    }

    pub fn get(&self, k: usize) -> &QMatrix {
        &self.s[k - 1]
    }

    /// `sum_k eps_ijk s_k`.
    fn contract(&self, i: usize, j: usize) -> QMatrix {
        let n = self.s[0].dim();
        let mut m = QMatrix::zero(n);
        for k in 1..4 {
            let e = levi_civita(i, j, k);
            if e != 0 {
                m = m.add(&self.get(k).scale(&c(e)));
            }
        }
        m
    }
}

/// `sum_i F_i D_i + G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    pub field: [QFunction; 3],
    pub mult: QMatrix,
}

impl DiffOperator {
    pub fn zero(n: usize) -> Self {
        DiffOperator { field: [c(0), c(0), c(0)], mult: QMatrix::zero(n) }
    }

    pub fn multiplication(n: usize, f: &QFunction) -> Self {
        DiffOperator { field: [c(0), c(0), c(0)], mult: QMatrix::scalar(n, f) }
    }

    pub fn dim(&self) -> usize {
        self.mult.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.field.iter().all(|f| f.is_zero()) && self.mult.is_zero()
    }

    pub fn is_multiplication(&self) -> bool {
        self.field.iter().all(|f| f.is_zero())
    }

    pub fn add(&self, o: &DiffOperator) -> DiffOperator {
        DiffOperator {
            field: [0, 1, 2].map(|i| self.field[i].add_ref(&o.field[i])),
            mult: self.mult.add(&o.mult),
        }
    }

    pub fn sub(&self, o: &DiffOperator) -> DiffOperator {
        self.add(&o.scale(&c(-1)))
    }

    pub fn scale(&self, f: &QFunction) -> DiffOperator {
        DiffOperator { field: [0, 1, 2].map(|i| self.field[i].mul_ref(f)), mult: self.mult.scale(f) }
    }

    /// The vector-field part applied to a function.
    pub fn apply_field(&self, g: &QFunction) -> QFunction {
        let mut acc = Coefficient::zero();
        for i in 0..3 {
            if !self.field[i].is_zero() {
                acc = acc.add_ref(&self.field[i].mul_ref(&qderive(g, i + 1)));
            }
        }
        acc
    }

    /// `self` followed by multiplication with a scalar function on the right:
    /// `X o f = f X + X(f)`.
    pub fn then_multiply(&self, f: &QFunction) -> Result<DiffOperator, IndRepError> {
        let n = self.dim();
        let left = DiffOperator { field: [0, 1, 2].map(|i| self.field[i].mul_ref(f)), mult: self.mult.mul(&QMatrix::scalar(n, f))? };
        Ok(left.add(&DiffOperator::multiplication(n, &self.apply_field(f))))
    }
}

impl std::fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for i in 0..3 {
            if !self.field[i].is_zero() {
                parts.push(format!("({})*D{}", self.field[i], i + 1));
            }
        }
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let x = self.mult.get(a, b);
                if !x.is_zero() {
                    if n == 1 {
                        parts.push(format!("({})", x));
                    } else {
                        parts.push(format!("({})*E[{},{}]", x, a, b));
                    }
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `[X + f, Y + g] = [X, Y] + X(g) - Y(f) + [f, g]`.
pub fn diffop_commutator(a: &DiffOperator, b: &DiffOperator) -> Result<DiffOperator, IndRepError> {
    if a.dim() != b.dim() {
        return Err(IndRepError::Unsupported("operators over different spins".into()));
    }
    let field = [0, 1, 2].map(|i| a.apply_field(&b.field[i]).sub_ref(&b.apply_field(&a.field[i])));
    let mult = b.mult.map(|g| a.apply_field(g)).sub(&a.mult.map(|f| b.apply_field(f))).add(&a.mult.commutator(&b.mult)?);
    Ok(DiffOperator { field, mult })
}

/// `E = exp(p0/k) = u/m` and `p_j = -k s q_j / u`.
pub fn deform_momentum() -> (QFunction, [QFunction; 3]) {
    let u = u_function();
    let e = u.checked_div(&Coefficient::mass()).expect("m is invertible");
    let ks = Coefficient::kappa().mul_ref(&Coefficient::sinh());
    let p = [1, 2, 3].map(|j| ks.mul_ref(&q(j)).neg_ref().checked_div(&u).expect("u is invertible on the shell"));
    (e, p)
}

/// The map `q -> q~` of the induced representation.
pub fn tilde_q() -> [QFunction; 4] {
    let (m, ch, sh) = (Coefficient::mass(), Coefficient::cosh(), Coefficient::sinh());
    let u = u_function();
    let q0t = m.mul_ref(&q(0)).mul_ref(&ch).sub_ref(&m.mul_ref(&m).mul_ref(&sh)).checked_div(&u).expect("u != 0");
    let qk = |k: usize| m.mul_ref(&q(k)).checked_div(&u).expect("u != 0");
    [q0t, qk(1), qk(2), qk(3)]
}

/// Builds one generator of the algebra as an operator.
pub fn build_tilde_generator(kind: Kind, spin: Spin, conv: RepConvention) -> DiffOperator {
    let n = spin.dim();
    let sm = SpinMatrices::new(spin);
    let i = Coefficient::i();
    let u = u_function();
    let (m, ks) = (Coefficient::mass(), Coefficient::kappa().mul_ref(&Coefficient::sinh()));
    match kind {
        Kind::Rot(a, b) => {
            let sign = match conv.orbital {
                OrbitalSign::Standard => -1,
                OrbitalSign::Flipped => 1,
            };
            let mut op = DiffOperator::zero(n);
            let f = i.mul_ref(&c(sign));
            op.field[b - 1] = f.mul_ref(&q(a));
            op.field[a - 1] = f.mul_ref(&q(b)).neg_ref();
            op.mult = sm.contract(a, b);
            op
        }
        Kind::Boost(a) => {
            let mut op = DiffOperator::zero(n);
            op.field[a - 1] = i.mul_ref(&q(0));
            let w = Coefficient::one().checked_div(&q(0).add_ref(&m)).expect("q0 + m != 0");
            let mut mult = QMatrix::zero(n);
            for j in 1..4 {
                for k in 1..4 {
                    let e = levi_civita(a, j, k);
                    if e != 0 {
                        mult = mult.add(&sm.get(k).scale(&q(j).mul_ref(&w).mul_ref(&c(e))));
                    }
                }
            }
            op.mult = mult;
            op
        }
        Kind::P(0) => DiffOperator::multiplication(n, &Coefficient::var(Var::LOG)),
        Kind::P(j) => DiffOperator::multiplication(n, &ks.mul_ref(&q(j)).neg_ref().checked_div(&u).expect("u != 0")),
        Kind::A | Kind::AInv => {
            let m_over_u = m.checked_div(&u).expect("u != 0");
            let u_over_m = u.checked_div(&m).expect("m != 0");
            let a = match conv.exp {
                ExpRealization::MOverU => (m_over_u, u_over_m),
                ExpRealization::UOverM => (u_over_m, m_over_u),
            };
            DiffOperator::multiplication(n, if kind == Kind::A { &a.0 } else { &a.1 })
        }
    }
}

/// The representation: generators as operators plus a realization of
/// algebra elements that are linear in the Lorentz generators.
pub struct InducedRep {
    pub alg: KAlgebra,
    pub spin: Spin,
    pub conv: RepConvention,
    ops: Vec<DiffOperator>,
}

impl InducedRep {
    pub fn new(spin: Spin) -> Self {
        InducedRep::with_convention(spin, RepConvention::default())
    }

    pub fn with_convention(spin: Spin, conv: RepConvention) -> Self {
        let alg = build_kalgebra();
        let ops = (0..alg.pres.num_generators()).map(|g| build_tilde_generator(alg.kind(g as Gen), spin, conv)).collect();
        InducedRep { alg, spin, conv, ops }
    }

    pub fn generator(&self, g: Gen) -> &DiffOperator {
        &self.ops[g as usize]
    }

    pub fn of_kind(&self, k: Kind) -> &DiffOperator {
        self.generator(self.alg.gen_of(k))
    }

    /// Image of an algebra element whose words contain at most one Lorentz
    /// generator, placed first (as in the ordered basis).
    pub fn realize(&self, x: &AlgebraElement) -> Result<DiffOperator, IndRepError> {
        let n = self.spin.dim();
        let mut out = DiffOperator::zero(n);
        for (w, coef) in x.terms() {
            let mut op: Option<DiffOperator> = None;
            let mut f = Coefficient::one();
            for (pos, &g) in w.gens().iter().enumerate() {
                let gop = self.generator(g);
                if gop.is_multiplication() {
                    let h = gop.mult.get(0, 0);
                    if has_log(h) && has_log(&f) {
                        return Err(IndRepError::LogSquared);
                    }
                    f = f.mul_ref(h);
                } else if pos == 0 {
                    op = Some(gop.clone());
                } else {
                    return Err(IndRepError::Unsupported(format!("word {}", self.alg.pres.render_word(w))));
                }
            }
            let term = match op {
                Some(o) => o.then_multiply(&f)?,
                None => DiffOperator::multiplication(n, &f),
            };
            out = out.add(&term.scale(coef));
        }
        Ok(out)
    }
}

fn op_outcome(r: Result<DiffOperator, IndRepError>) -> Result<(), String> {
    match r {
        Ok(d) if d.is_zero() => Ok(()),
        Ok(d) => Err(d.to_string()),
        Err(e) => Err(format!("error: {}", e)),
    }
}

fn scalar_result(r: Result<Coefficient, ScalarError>) -> Result<(), String> {
    match r {
        Ok(x) if x.is_zero() => Ok(()),
        Ok(x) => Err(x.to_string()),
        Err(e) => Err(format!("error: {}", e)),
    }
}

fn record(suite: &str, name: &str, results: Vec<(String, Result<(), String>)>) -> CheckRecord {
    let n = results.len();
    let name = format!("{} [{} cases]", name, n);
    match results.into_iter().find(|(_, r)| r.is_err()) {
        None => CheckRecord::pass(suite, &name),
        Some((label, Err(res))) => CheckRecord::fail(suite, &name, &format!("{}: {}", label, res)),
        Some(_) => unreachable!(),
    }
}

/// Every bracket of the algebra holds as an identity of operators.
pub fn closure_suite(rep: &InducedRep) -> Vec<CheckRecord> {
    let alg = &rep.alg;
    let gens: Vec<Gen> = alg.ten().into_iter().chain([alg.gen_of(Kind::A)]).collect();
    let mut pairs = Vec::new();
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x + 1..] {
            pairs.push((a, b));
        }
    }
    let results: Vec<(String, Result<(), String>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let label = format!("[{}, {}]", alg.pres.gen_name(a), alg.pres.gen_name(b));
            let r = (|| -> Result<DiffOperator, IndRepError> {
                let lhs = diffop_commutator(rep.generator(a), rep.generator(b))?;
                let br = alg
                    .pres
                    .commutator(&AlgebraElement::gen(a), &AlgebraElement::gen(b))
                    .map_err(|e| IndRepError::Unsupported(e.to_string()))?;
                Ok(lhs.sub(&rep.realize(&br)?))
            })();
            (label, op_outcome(r))
        })
        .collect();
    let mut out = vec![record(
        CLOSURE_SUITE,
        &format!("spin {}: operator brackets match the algebra", rep.spin.label()),
        results,
    )];

    let sm = SpinMatrices::new(rep.spin);
    let mut su2 = Vec::new();
    for (i, j) in [(1, 2), (2, 3), (3, 1)] {
        let r = sm.get(i).commutator(sm.get(j)).map(|cm| {
            let k = 6 - i - j;
            cm.sub(&sm.get(k).scale(&Coefficient::i().mul_ref(&c(levi_civita(i, j, k)))))
        });
        let res = match r {
            Ok(m) if m.is_zero() => Ok(()),
            Ok(_) => Err("nonzero".into()),
            Err(e) => Err(e.to_string()),
        };
        su2.push((format!("[s{}, s{}]", i, j), res));
    }
    out.push(record(CLOSURE_SUITE, &format!("spin {}: su(2) brackets", rep.spin.label()), su2));

    let mut tangent = Vec::new();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        let op = rep.of_kind(Kind::Rot(a, b));
        tangent.push((format!("M[{},{}] q0", a, b), scalar_result(Ok(op.apply_field(&q(0))))));
    }
    out.push(record(CLOSURE_SUITE, &format!("spin {}: rotations act tangentially to the shell", rep.spin.label()), tangent));

    // l stands for k ln(E)
    let (e, _) = deform_momentum();
    let mut log = Vec::new();
    for i in 1..4 {
        let l = Coefficient::var(Var::LOG);
        let lhs = qderive(&e, i);
        let rhs = e.mul_ref(&qderive(&l, i)).mul_ref(&Coefficient::inv_kappa());
        log.push((format!("D{}", i), scalar_result(Ok(lhs.sub_ref(&rhs)))));
    }
    out.push(record(CLOSURE_SUITE, &format!("spin {}: d(exp(l/k)) = exp(l/k) dl/k", rep.spin.label()), log));
    out
}

/// Dispersion, deformation map and limits.
pub fn momentum_shell_suite(order: i32) -> Vec<CheckRecord> {
    let (e, p) = deform_momentum();
    let (k, m, ch, sh) = (Coefficient::kappa(), Coefficient::mass(), Coefficient::cosh(), Coefficient::sinh());
    let k2 = k.mul_ref(&k);
    let p2 = p.iter().fold(Coefficient::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)));
    let mut out = Vec::new();
    let ok = |name: &str, r: Result<(), String>| match r {
        Ok(()) => CheckRecord::pass(SHELL_SUITE, name),
        Err(res) => CheckRecord::fail(SHELL_SUITE, name, &res),
    };

    let u = u_function();
    out.push(ok(
        "u = m c - q0 s is a nonzero element",
        if u.is_zero() { Err("u normalizes to 0".into()) } else { Ok(()) },
    ));

    let lhs = e.inv().map(|einv| {
        k2.mul_ref(&e.sub_ref(&c(2)).add_ref(&einv)).sub_ref(&e.mul_ref(&p2))
    });
    let rhs = c(2).mul_ref(&k2).mul_ref(&ch.sub_ref(&c(1)));
    out.push(ok(
        "k^2 (E - 2 + 1/E) - E p^2 = 2 k^2 (c - 1)",
        scalar_result(lhs.map(|l| l.sub_ref(&rhs))),
    ));

    let rest = |f: &Coefficient| {
        f.substitute_all(&|v| {
            if v == Var::Q0 {
                Some(m.clone())
            } else if v == Var::q(1) || v == Var::q(2) || v == Var::q(3) {
                Some(c(0))
            } else {
                None
            }
        })
    };
    let mut rest_checks = vec![("E".to_string(), scalar_result(rest(&e).map(|x| x.sub_ref(&ch.sub_ref(&sh)))))];
    for (j, pj) in p.iter().enumerate() {
        rest_checks.push((format!("p{}", j + 1), scalar_result(rest(pj))));
    }
    let qt = tilde_q();
    for (mu, x) in qt.iter().enumerate() {
        let want = if mu == 0 { m.clone() } else { c(0) };
        rest_checks.push((format!("q~{}", mu), scalar_result(rest(x).map(|y| y.sub_ref(&want)))));
    }
    out.push(record(SHELL_SUITE, "rest point: E = c - s, p = 0, q~ = q", rest_checks));

    let shell = qt[0].mul_ref(&qt[0]).sub_ref(&qt[1..].iter().fold(Coefficient::zero(), |a, x| a.add_ref(&x.mul_ref(x))));
    out.push(ok("q~0^2 - q~^2 = m^2", scalar_result(Ok(shell.sub_ref(&m.mul_ref(&m))))));

    // k -> oo at order k^0
    let mut limits = Vec::new();
    let leading = |x: &Coefficient, want: &Coefficient| -> Result<(), String> {
        let ser = coeff_series(x, order).map_err(|e| e.to_string())?;
        if ser.lowest < 0 {
            for n in ser.lowest..0 {
                if !ser.coeff(n).is_zero() {
                    return Err(format!("positive power k^{}", -n));
                }
            }
        }
        scalar_result(Ok(ser.coeff(0).sub_ref(want)))
    };
    for j in 1..4 {
        limits.push((format!("p{} -> -q{}", j, j), leading(&p[j - 1], &q(j).neg_ref())));
        limits.push((format!("q~{} -> q{}", j, j), leading(&qt[j], &q(j))));
    }
    limits.push(("q~0 -> q0".into(), leading(&qt[0], &q(0))));
    let e2 = e.inv().map(|einv| k2.mul_ref(&e.sub_ref(&c(2)).add_ref(&einv)));
    limits.push((
        "k^2 (E - 2 + 1/E) -> q0^2".into(),
        e2.map_err(|x| x.to_string()).and_then(|x| leading(&x, &q(0).mul_ref(&q(0)))),
    ));
    out.push(record(SHELL_SUITE, "classical limit of the deformed momenta", limits));
    out
}
