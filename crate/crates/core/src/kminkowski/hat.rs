//! Action of the algebra on symbols through the hat generators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::hopfcore::{AlgebraElement, Gen, Word};
use crate::kalgebra::{KAlgebra, Kind};
use crate::report::CheckRecord;
use crate::scalars::Coefficient;

use super::symbol::{NormalSymbol, XMono};
use super::{KMinkError, ANTIREP_SUITE, LEIBNIZ_SUITE};

/// How `x_i` in the generator formulas is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum XLowering {
    /// `x_i = -x^i`.
    #[default]
    Metric,
    /// `x_i = x^i`, the negative control.
    Plain,
}

fn c(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

fn lowered_sign(l: XLowering) -> Coefficient {
    match l {
        XLowering::Metric => c(-1),
        XLowering::Plain => c(1),
    }
}

fn add(a: &NormalSymbol, b: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
    a.add(b)
}

/// One generator acting on a symbol.
///
/// `P_mu = i d_mu`, `M_ij = -i(x_i d_j - x_j d_i)`,
/// `M_i0 = i x0 d_i - x_i (k/2 (1 - T_-2) - Lap/(2k)) + (1/k) x^k d_k d_i`
/// with `T_n` the shift `x0 -> x0 + n i/k`, and `A = T_-1`.
pub fn hat_apply(kind: Kind, f: &NormalSymbol, lowering: XLowering) -> Result<NormalSymbol, KMinkError> {
    let i = Coefficient::i();
    let sl = lowered_sign(lowering);
    match kind {
        Kind::P(mu) => Ok(f.partial(mu).scale(&i)),
        Kind::Rot(a, b) => {
            let t = f.partial(b).times_x(a).sub(&f.partial(a).times_x(b))?;
            Ok(t.scale(&i.neg_ref().mul_ref(&sl)))
        }
        Kind::Boost(a) => {
            let k = Coefficient::kappa();
            let half = Coefficient::from_ratio(1, 2);
            let t1 = f.partial(a).times_x(0).scale(&i);
            let inner = f
                .sub(&f.shift_x0(-2))?
                .scale(&k.mul_ref(&half))
                .sub(&f.laplacian().scale(&half.mul_ref(&Coefficient::inv_kappa())))?;
            let t2 = inner.times_x(a).scale(&sl.neg_ref());
            let mut t3 = NormalSymbol::zero();
            let da = f.partial(a);
            for kk in 1..4 {
                t3 = add(&t3, &da.partial(kk).times_x(kk))?;
            }
            add(&add(&t1, &t2)?, &t3.scale(&Coefficient::inv_kappa()))
        }
        Kind::A => Ok(f.shift_x0(-1)),
        Kind::AInv => Ok(f.shift_x0(1)),
    }
}

/// `hat(g1 g2 ... gn)` applies `g1` first: the action is an antirepresentation.
pub fn hat_word(alg: &KAlgebra, w: &Word, f: &NormalSymbol, lowering: XLowering) -> Result<NormalSymbol, KMinkError> {
    let mut cur = f.clone();
    for &g in w.gens() {
        cur = hat_apply(alg.kind(g), &cur, lowering)?;
    }
    Ok(cur)
}

pub fn hat_element(
    alg: &KAlgebra,
    x: &AlgebraElement,
    f: &NormalSymbol,
    lowering: XLowering,
) -> Result<NormalSymbol, KMinkError> {
    let mut out = NormalSymbol::zero();
    for (w, coef) in x.terms() {
        out = out.add(&hat_word(alg, w, f, lowering)?.scale(coef))?;
    }
    Ok(out)
}

/// All monomials in `x0..x3` of total degree at most `d`.
pub fn monomial_basis(d: u32) -> Vec<NormalSymbol> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for cc in 0..=d - a - b {
                for e in 0..=d - a - b - cc {
                    let m: XMono = [a, b, cc, e];
                    out.push(NormalSymbol::monomial(m, Coefficient::one()));
                }
            }
        }
    }
    out
}

/// `[X^, Y^] = -hat([X, Y])` for all pairs of the ten generators.
pub fn antirep_suite(alg: &KAlgebra, d: u32, lowering: XLowering) -> Vec<CheckRecord> {
    let gens = alg.ten();
    let mut pairs = Vec::new();
    for (n, &a) in gens.iter().enumerate() {
        for &b in &gens[n + 1..] {
            pairs.push((a, b));
        }
    }
    let basis = monomial_basis(d);
    let results: Vec<(String, Option<String>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let label = format!("[{}, {}]", alg.pres.gen_name(a), alg.pres.gen_name(b));
            let br = match alg.pres.commutator(&AlgebraElement::gen(a), &AlgebraElement::gen(b)) {
                Ok(x) => x,
                Err(e) => return (label, Some(e.to_string())),
            };
            for f in &basis {
                let r = (|| -> Result<NormalSymbol, KMinkError> {
                    let (ka, kb) = (alg.kind(a), alg.kind(b));
                    let lhs = hat_apply(ka, &hat_apply(kb, f, lowering)?, lowering)?
                        .sub(&hat_apply(kb, &hat_apply(ka, f, lowering)?, lowering)?)?;
                    lhs.add(&hat_element(alg, &br, f, lowering)?)
                })();
                match r {
                    Ok(z) if z.is_zero() => {}
                    Ok(z) => return (label, Some(format!("on {}: {}", f, z))),
                    Err(e) => return (label, Some(e.to_string())),
                }
            }
            (label, None)
        })
        .collect();
    let name = format!("[X^, Y^] = -hat([X, Y]) on monomials of degree <= {} [{} cases]", d, results.len());
    match results.into_iter().find(|(_, r)| r.is_some()) {
        None => vec![CheckRecord::pass(ANTIREP_SUITE, name)],
        Some((label, Some(res))) => vec![CheckRecord::fail(ANTIREP_SUITE, name, format!("{}: {}", label, res))],
        Some(_) => unreachable!(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeibnizOutcome {
    /// `X^(a*b) = sum X(1)^a * X(2)^b`.
    pub coproduct: bool,
    /// `X^(a*b) = sum X(2)^a * X(1)^b`.
    pub opposite: bool,
}

/// Tests both coproduct orderings of the module-algebra law on one pair.
pub fn leibniz_probe(
    alg: &KAlgebra,
    g: Gen,
    a: &NormalSymbol,
    b: &NormalSymbol,
    lowering: XLowering,
) -> Result<LeibnizOutcome, KMinkError> {
    let lhs = hat_apply(alg.kind(g), &a.star(b)?, lowering)?;
    let delta = alg.pres.coproduct(&AlgebraElement::gen(g)).map_err(|e| KMinkError::Usage(e.to_string()))?;
    let mut plain = NormalSymbol::zero();
    let mut opp = NormalSymbol::zero();
    for (slots, coef) in delta.terms() {
        let x1 = hat_word(alg, &slots[0], a, lowering)?;
        let x2 = hat_word(alg, &slots[1], b, lowering)?;
        plain = plain.add(&x1.star(&x2)?.scale(coef))?;
        let y1 = hat_word(alg, &slots[1], a, lowering)?;
        let y2 = hat_word(alg, &slots[0], b, lowering)?;
        opp = opp.add(&y1.star(&y2)?.scale(coef))?;
    }
    Ok(LeibnizOutcome { coproduct: lhs.sub(&plain)?.is_zero(), opposite: lhs.sub(&opp)?.is_zero() })
}

pub(crate) fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> NormalSymbol {
    let mut s = NormalSymbol::zero();
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut m = [0u32; 4];
        for _ in 0..d {
            m[rng.gen_range(0..4)] += 1;
        }
        let coef = Coefficient::from_int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        s = s.add(&NormalSymbol::monomial(m, coef)).expect("polynomial");
    }
    s
}

/// Records, per generator, which ordering of the coproduct gives a
/// product rule for the action. Neither holding is reported, not failed.
pub fn leibniz_suite(alg: &KAlgebra, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(NormalSymbol, NormalSymbol)> =
        (0..samples).map(|_| (random_polynomial(&mut rng, 2, 3), random_polynomial(&mut rng, 2, 3))).collect();
    let gens = alg.eleven();
    let results: Vec<(Gen, Result<LeibnizOutcome, KMinkError>)> = gens
        .par_iter()
        .map(|&g| {
            let mut acc = LeibnizOutcome { coproduct: true, opposite: true };
            for (a, b) in &pairs {
                match leibniz_probe(alg, g, a, b, XLowering::Metric) {
                    Ok(o) => {
                        acc.coproduct &= o.coproduct;
                        acc.opposite &= o.opposite;
                    }
                    Err(e) => return (g, Err(e)),
                }
            }
            (g, Ok(acc))
        })
        .collect();
    results
        .into_iter()
        .map(|(g, r)| {
            let name = alg.pres.gen_name(g);
            match r {
                Ok(o) => {
                    let law = match (o.coproduct, o.opposite) {
                        (true, true) => "both coproduct orderings give the product rule",
                        (true, false) => "the coproduct gives the product rule",
                        (false, true) => "the opposite coproduct gives the product rule",
                        (false, false) => "neither coproduct ordering gives the product rule (flagged)",
                    };
                    CheckRecord::pass(LEIBNIZ_SUITE, format!("{}: {} [{} cases]", name, law, pairs.len()))
                }
                Err(e) => CheckRecord::fail(LEIBNIZ_SUITE, format!("{}: product rule probe", name), e.to_string()),
            }
        })
        .collect()
}
