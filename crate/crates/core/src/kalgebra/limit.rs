//! Undeformed limit: replace `A` by its truncated exponential series and read
//! off the order-`k^0` structure constants.

use super::{KAlgebra, Kind};
use crate::hopfcore::{AlgebraElement, Gen, HopfError, Outcome, Tally, Word};
use crate::metric::g2;
use crate::report::CheckRecord;
use crate::scalars::{coeff_series, Coefficient};

pub const LIMIT_SUITE: &str = "classical-limit";

/// Truncated `sum_{n<=order} (sign P0/k)^n / n!`.
fn exp_series(k: &KAlgebra, sign: i64, order: usize) -> AlgebraElement {
    let p0 = k.gen_of(Kind::P(0));
    let mut out = AlgebraElement::zero();
    let mut fact = 1i64;
    for n in 0..=order {
        if n > 0 {
            fact *= n as i64;
        }
        let c = Coefficient::from_int(sign.pow(n as u32))
            .mul_ref(&Coefficient::inv_kappa().pow(n as u32))
            .mul_ref(&Coefficient::from_ratio(1, fact));
        out.add_term(Word(vec![p0; n]), &c);
    }
    out
}

/// Replaces every `A` by `exp(-P0/k)` and `A^-1` by `exp(P0/k)`, truncated.
pub fn substitute_a(k: &KAlgebra, e: &AlgebraElement, order: usize) -> Result<AlgebraElement, HopfError> {
    let p = &k.pres;
    let plus = exp_series(k, -1, order);
    let minus = exp_series(k, 1, order);
    let mut out = AlgebraElement::zero();
    for (w, c) in e.terms() {
        let mut acc = AlgebraElement::scalar(c.clone());
        for &x in w.gens() {
            let factor = match k.kind(x) {
                Kind::A => plus.clone(),
                Kind::AInv => minus.clone(),
                _ => AlgebraElement::gen(x),
            };
            acc = p.multiply(&acc, &factor)?;
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

fn m_indices(kind: Kind) -> Option<(usize, usize)> {
    match kind {
        Kind::Rot(i, j) => Some((i, j)),
        Kind::Boost(i) => Some((i, 0)),
        _ => None,
    }
}

/// Undeformed Poincare bracket of two of the ten generators, from the
/// covariant formulas.
pub fn classical_bracket(k: &KAlgebra, x: Gen, y: Gen) -> AlgebraElement {
    let i = Coefficient::i();
    let gc = |a: usize, b: usize| Coefficient::from_int(g2(a, b));
    let (kx, ky) = (k.kind(x), k.kind(y));
    match (m_indices(kx), m_indices(ky), kx, ky) {
        // [M_mn, P_r] = i(g_nr P_m - g_mr P_n)
        (Some((mu, nu)), None, _, Kind::P(rho)) => {
            k.p(mu).scale(&gc(nu, rho)).sub(&k.p(nu).scale(&gc(mu, rho))).scale(&i)
        }
        (None, Some(_), Kind::P(_), _) => classical_bracket(k, y, x).neg(),
        // [M_mn, M_rs] = i(g_ms M_nr - g_ns M_mr + g_nr M_ms - g_mr M_ns)
        (Some((mu, nu)), Some((rho, sigma)), _, _) => k
            .m(nu, rho)
            .scale(&gc(mu, sigma))
            .sub(&k.m(mu, rho).scale(&gc(nu, sigma)))
            .add(&k.m(mu, sigma).scale(&gc(nu, rho)))
            .sub(&k.m(nu, sigma).scale(&gc(mu, rho)))
            .scale(&i),
        _ => AlgebraElement::zero(),
    }
}

/// For every pair of the ten Poincare generators: the `k^0` part of the
/// substituted bracket equals the classical bracket and no positive power of
/// `k` survives.
pub fn classical_limit_suite(k: &KAlgebra, order: usize) -> Vec<CheckRecord> {
    let p = &k.pres;
    let order = order.max(2);
    let ten = k.ten();
    let mut t0 = Tally::new(LIMIT_SUITE, "order k^0 equals the classical Poincare bracket");
    let mut tpos = Tally::new(LIMIT_SUITE, "no positive powers of k");
    for a in 0..ten.len() {
        for b in a + 1..ten.len() {
            let (x, y) = (ten[a], ten[b]);
            let label = || format!("[{}, {}]", p.gen_name(x), p.gen_name(y));
            let sub = p
                .commutator(&AlgebraElement::gen(x), &AlgebraElement::gen(y))
                .and_then(|br| substitute_a(k, &br, order));
            let sub = match sub {
                Ok(s) => s,
                Err(e) => {
                    t0.error(e, label);
                    continue;
                }
            };
            let mut leading = AlgebraElement::zero();
            let mut positive = AlgebraElement::zero();
            let mut failure = None;
            for (w, c) in sub.terms() {
                match coeff_series(c, 0) {
                    Ok(s) => {
                        leading.add_term(w.clone(), &s.coeff(0));
                        for n in s.lowest..0 {
                            positive.add_term(w.clone(), &s.coeff(n).mul_ref(&Coefficient::kappa().pow((-n) as u32)));
                        }
                    }
                    Err(e) => failure = Some(e.to_string()),
                }
            }
            if let Some(f) = failure {
                t0.record(Outcome::Residual(f), label);
                continue;
            }
            let diff = leading.sub(&classical_bracket(k, x, y));
            t0.record(if diff.is_zero() { Outcome::Zero } else { Outcome::Residual(p.render(&diff)) }, label);
            tpos.record(
                if positive.is_zero() { Outcome::Zero } else { Outcome::Residual(p.render(&positive)) },
                label,
            );
        }
    }
    vec![t0.finish(), tpos.finish(), a_series_check(k, order)]
}

/// Oracle for the derived rule `[M_i0, A] = -(i/k) P_i A`: with `A` replaced
/// by its series, both sides agree through order `k^-order`.
pub fn a_series_check(k: &KAlgebra, order: usize) -> CheckRecord {
    let p = &k.pres;
    let mut t = Tally::new(LIMIT_SUITE, &format!("[M_i0, A] matches the series of exp(-P0/k) to order {}", order));
    for i in 1..4 {
        let boost = k.m(i, 0);
        let label = || format!("[M[{},0], A]", i);
        let r = (|| -> Result<AlgebraElement, HopfError> {
            // left: [M_i0, series(A)] computed without the A generator
            let series = exp_series(k, -1, order);
            let lhs = p.commutator(&boost, &series)?;
            // right: substitute into -(i/k) P_i A
            let rule = p.commutator(&boost, &k.a())?;
            let rhs = substitute_a(k, &rule, order)?;
            Ok(lhs.sub(&rhs))
        })();
        match r {
            Ok(d) => {
                let mut low = AlgebraElement::zero();
                for (w, c) in d.terms() {
                    match coeff_series(c, order as i32) {
                        Ok(s) => {
                            for n in s.lowest..=order as i32 {
                                low.add_term(w.clone(), &s.coeff(n));
                            }
                        }
                        Err(e) => {
                            t.record(Outcome::Residual(e.to_string()), label);
                            continue;
                        }
                    }
                }
                t.record(if low.is_zero() { Outcome::Zero } else { Outcome::Residual(p.render(&low)) }, label);
            }
            Err(e) => t.error(e, label),
        }
    }
    t.finish()
}
