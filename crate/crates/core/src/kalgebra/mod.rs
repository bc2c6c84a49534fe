//! The kappa-Poincare algebra in the Majid-Ruegg basis, with the exact
//! group-like generator `A = exp(-P0/k)` and its inverse.
//!
//! Basis order: rotations `M[1,2] M[1,3] M[2,3]` < boosts `M[1,0] M[2,0]
//! M[3,0]` < momenta `P[0..3]` < `A`, `A^-1`.

mod limit;

pub use limit::{a_series_check, classical_bracket, classical_limit_suite};

use rayon::prelude::*;

use crate::hopfcore::{
    check_hopf_axioms, confluence_probe, element_outcome, random_raw_word, tensor_outcome, AlgebraElement, Gen,
    HopfError, HopfPresentation, Outcome, PresentationBuilder, Tally, TensorElement,
};
use crate::metric::g2;
use crate::report::CheckRecord;
use crate::scalars::Coefficient;

pub const JACOBI_SUITE: &str = "algebra-jacobi";
pub const HOPF_SUITE: &str = "algebra-hopf";

/// Reading of `P^r P_r` in the boost-momentum bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentumSquare {
    /// `P^r P_r = -sum_r P_r^2` (spatial metric).
    Minkowski,
    /// `P^r P_r = +sum_r P_r^2`; the negative control.
    Euclidean,
}

/// Placement of `A^-1` in the boost antipode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoostAntipode {
    /// `S(M_i0) = -(M_i0 - (1/k) M_ij P_j) A^-1`.
    RightInverse,
    /// `S(M_i0) = -A^-1 (M_i0 - (1/k) M_ij P_j)`, as printed; fails the
    /// antipode law.
    LeftInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KAlgebraOptions {
    pub momentum_square: MomentumSquare,
    pub boost_antipode: BoostAntipode,
}

impl Default for KAlgebraOptions {
    fn default() -> Self {
        KAlgebraOptions { momentum_square: MomentumSquare::Minkowski, boost_antipode: BoostAntipode::RightInverse }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `M_ij` with `i < j`.
    Rot(usize, usize),
    /// `M_i0`.
    Boost(usize),
    P(usize),
    A,
    AInv,
}

pub struct KAlgebra {
    pub pres: HopfPresentation,
    kinds: Vec<Kind>,
    options: KAlgebraOptions,
}

const ROTATIONS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

impl KAlgebra {
    pub fn options(&self) -> KAlgebraOptions {
        self.options
    }

    pub fn kind(&self, g: Gen) -> Kind {
        self.kinds[g as usize]
    }

    pub fn gen_of(&self, k: Kind) -> Gen {
        self.kinds.iter().position(|&x| x == k).expect("known generator kind") as Gen
    }

    pub fn p(&self, mu: usize) -> AlgebraElement {
        AlgebraElement::gen(self.gen_of(Kind::P(mu)))
    }

    pub fn a(&self) -> AlgebraElement {
        AlgebraElement::gen(self.gen_of(Kind::A))
    }

    pub fn a_inv(&self) -> AlgebraElement {
        AlgebraElement::gen(self.gen_of(Kind::AInv))
    }

    /// `M_{mu nu}` with antisymmetry (`M_{0i} = -M_{i0}`, `M_{mu mu} = 0`).
    pub fn m(&self, mu: usize, nu: usize) -> AlgebraElement {
        m_element(&self.kinds, mu, nu)
    }

    /// The eleven generators M, P, A in basis order.
    pub fn eleven(&self) -> Vec<Gen> {
        (0..self.kinds.len() as Gen).filter(|&g| self.kind(g) != Kind::AInv).collect()
    }

    /// The ten Poincare generators M, P.
    pub fn ten(&self) -> Vec<Gen> {
        (0..self.kinds.len() as Gen).filter(|&g| !matches!(self.kind(g), Kind::A | Kind::AInv)).collect()
    }
}

fn m_element(kinds: &[Kind], mu: usize, nu: usize) -> AlgebraElement {
    let find = |k: Kind| AlgebraElement::gen(kinds.iter().position(|&x| x == k).unwrap() as Gen);
    match (mu, nu) {
        _ if mu == nu => AlgebraElement::zero(),
        (0, j) => find(Kind::Boost(j)).neg(),
        (i, 0) => find(Kind::Boost(i)),
        (i, j) if i < j => find(Kind::Rot(i, j)),
        (i, j) => find(Kind::Rot(j, i)).neg(),
    }
}

fn c(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

fn ic() -> Coefficient {
    Coefficient::i()
}

/// The bracket `[x, y]` on generators as a raw element.
fn bracket(kinds: &[Kind], opts: &KAlgebraOptions, x: Kind, y: Kind) -> AlgebraElement {
    let gen = |k: Kind| AlgebraElement::gen(kinds.iter().position(|&z| z == k).unwrap() as Gen);
    let m = |a: usize, b: usize| m_element(kinds, a, b);
    let p = |a: usize| gen(Kind::P(a));
    let inv_k = Coefficient::inv_kappa();
    let gc = |a: usize, b: usize| c(g2(a, b));
    match (x, y) {
        (Kind::Rot(..), Kind::P(0)) => AlgebraElement::zero(),
        // [M_ij, P_k] = i(g_jk P_i - g_ik P_j)
        (Kind::Rot(i, j), Kind::P(k)) => p(i).scale(&gc(j, k)).sub(&p(j).scale(&gc(i, k))).scale(&ic()),
        (Kind::Boost(i), Kind::P(0)) => p(i).scale(&ic()),
        // [M_i0, P_k] = -i(k/2) g_ik (1 - A^2) + i/(2k) g_ik P^r P_r - (i/k) P_i P_k
        (Kind::Boost(i), Kind::P(k)) => {
            let mut out = AlgebraElement::zero();
            if i == k {
                let a2 = AlgebraElement::word(&[gen_index(kinds, Kind::A); 2]);
                let half_k = Coefficient::kappa().mul_ref(&Coefficient::from_ratio(1, 2));
                out.add_assign(
                    &AlgebraElement::one().sub(&a2).scale(&ic().neg_ref().mul_ref(&half_k).mul_ref(&gc(i, k))),
                );
                let sign = match opts.momentum_square {
                    MomentumSquare::Minkowski => -1,
                    MomentumSquare::Euclidean => 1,
                };
                let mut prp = AlgebraElement::zero();
                for r in 1..4 {
                    prp.add_assign(&p(r).concat_word(&p(r)).scale(&c(sign)));
                }
                let f = ic().mul_ref(&inv_k).mul_ref(&Coefficient::from_ratio(1, 2)).mul_ref(&gc(i, k));
                out.add_assign(&prp.scale(&f));
            }
            out.sub(&p(i).concat_word(&p(k)).scale(&ic().mul_ref(&inv_k)))
        }
        // [M_ij, M_rs] = i(g_is M_jr - g_js M_ir + g_jr M_is - g_ir M_js)
        (Kind::Rot(i, j), Kind::Rot(r, s)) => m(j, r)
            .scale(&gc(i, s))
            .sub(&m(i, r).scale(&gc(j, s)))
            .add(&m(i, s).scale(&gc(j, r)))
            .sub(&m(j, s).scale(&gc(i, r)))
            .scale(&ic()),
        // [M_i0, M_rs] = -i(g_is M_r0 - g_ir M_s0)
        (Kind::Boost(i), Kind::Rot(r, s)) => m(r, 0).scale(&gc(i, s)).sub(&m(s, 0).scale(&gc(i, r))).scale(&ic().neg_ref()),
        // [M_i0, M_j0] = -i M_ij
        (Kind::Boost(i), Kind::Boost(j)) => m(i, j).scale(&ic().neg_ref()),
        // [M_i0, A] = -(i/k) P_i A, [M_i0, A^-1] = (i/k) P_i A^-1
        (Kind::Boost(i), Kind::A) => p(i).concat_word(&gen(Kind::A)).scale(&ic().mul_ref(&inv_k).neg_ref()),
        (Kind::Boost(i), Kind::AInv) => p(i).concat_word(&gen(Kind::AInv)).scale(&ic().mul_ref(&inv_k)),
        (Kind::P(_), Kind::Rot(..) | Kind::Boost(_))
        | (Kind::Rot(..), Kind::Boost(_))
        | (Kind::A | Kind::AInv, Kind::Boost(_)) => bracket(kinds, opts, y, x).neg(),
        _ => AlgebraElement::zero(),
    }
}

fn gen_index(kinds: &[Kind], k: Kind) -> Gen {
    kinds.iter().position(|&z| z == k).unwrap() as Gen
}

pub fn build_kalgebra() -> KAlgebra {
    build_kalgebra_with(KAlgebraOptions::default())
}

pub fn build_kalgebra_with(options: KAlgebraOptions) -> KAlgebra {
    let mut b = PresentationBuilder::new("kappa-Poincare algebra");
    let mut kinds = Vec::new();
    for (n, &(i, j)) in ROTATIONS.iter().enumerate() {
        b.generator(&format!("M[{},{}]", i, j), 0, n as u32);
        kinds.push(Kind::Rot(i, j));
    }
    for i in 1..4 {
        b.generator(&format!("M[{},0]", i), 1, i as u32);
        kinds.push(Kind::Boost(i));
    }
    for mu in 0..4 {
        b.generator(&format!("P[{}]", mu), 2, mu as u32);
        kinds.push(Kind::P(mu));
    }
    let a = b.generator("A", 3, 0);
    let ai = b.generator("A^-1", 3, 1);
    kinds.extend([Kind::A, Kind::AInv]);
    b.inverse_pair(a, ai);

    let n = kinds.len() as Gen;
    for x in 0..n {
        for y in x + 1..n {
            if (x, y) == (a, ai) {
                continue;
            }
            let v = bracket(&kinds, &options, kinds[x as usize], kinds[y as usize]);
            if !v.is_zero() {
                b.bracket(x, y, v);
            }
        }
    }

    let gen = |k: Kind| AlgebraElement::gen(gen_index(&kinds, k));
    let inv_k = Coefficient::inv_kappa();
    let one = AlgebraElement::one();
    for g in 0..n {
        let x = AlgebraElement::gen(g);
        let (delta, s, e) = match kinds[g as usize] {
            Kind::Rot(..) => (TensorElement::tensor(&x, &one).add(&TensorElement::tensor(&one, &x)), x.neg(), 0),
            Kind::P(0) => (TensorElement::tensor(&x, &one).add(&TensorElement::tensor(&one, &x)), x.neg(), 0),
            Kind::P(_) => (
                TensorElement::tensor(&x, &gen(Kind::A)).add(&TensorElement::tensor(&one, &x)),
                gen(Kind::AInv).concat_word(&x).neg(),
                0,
            ),
            Kind::Boost(i) => {
                let mut d = TensorElement::tensor(&one, &x).add(&TensorElement::tensor(&x, &gen(Kind::A)));
                let mut inner = x.clone();
                for j in 1..4 {
                    let mij = m_element(&kinds, i, j);
                    d.add_assign(&TensorElement::tensor(&mij, &gen(Kind::P(j))).scale(&inv_k));
                    inner = inner.sub(&mij.concat_word(&gen(Kind::P(j))).scale(&inv_k));
                }
                let s = match options.boost_antipode {
                    BoostAntipode::RightInverse => inner.concat_word(&gen(Kind::AInv)).neg(),
                    BoostAntipode::LeftInverse => gen(Kind::AInv).concat_word(&inner).neg(),
                };
                (d, s, 0)
            }
            Kind::A => (TensorElement::tensor(&x, &x), gen(Kind::AInv), 1),
            Kind::AInv => (TensorElement::tensor(&x, &x), gen(Kind::A), 1),
        };
        b.set_delta(g, delta);
        b.set_antipode(g, s);
        b.set_counit(g, c(e));
    }
    let pres = b.build().expect("algebra presentation is valid");
    KAlgebra { pres, kinds, options }
}

/// Jacobi identity on every unordered triple of the eleven generators.
pub fn jacobi_suite(k: &KAlgebra) -> Vec<CheckRecord> {
    let p = &k.pres;
    let gens = k.eleven();
    let mut triples = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            for c in b + 1..gens.len() {
                triples.push((gens[a], gens[b], gens[c]));
            }
        }
    }
    let results: Vec<(String, Result<AlgebraElement, HopfError>)> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let (x, y, z) = (AlgebraElement::gen(a), AlgebraElement::gen(b), AlgebraElement::gen(c));
            let label = format!("({}, {}, {})", p.gen_name(a), p.gen_name(b), p.gen_name(c));
            let r = (|| {
                let t1 = p.commutator(&p.commutator(&x, &y)?, &z)?;
                let t2 = p.commutator(&p.commutator(&y, &z)?, &x)?;
                let t3 = p.commutator(&p.commutator(&z, &x)?, &y)?;
                Ok(t1.add(&t2).add(&t3))
            })();
            (label, r)
        })
        .collect();
    let mut t = Tally::new(JACOBI_SUITE, "Jacobi identity on generator triples");
    for (label, r) in results {
        match r {
            Ok(e) => t.record(element_outcome(p, &e), || label.clone()),
            Err(e) => t.error(e, || label.clone()),
        }
    }
    vec![t.finish()]
}

/// Algebra Hopf suite: generic axioms, Δ-homomorphism on all 55 generator
/// pairs, antipode and counit on every bracket, structural invariants.
pub fn kalgebra_hopf_verify(k: &KAlgebra, max_degree: usize, samples: usize, seed: u64) -> Vec<CheckRecord> {
    let p = &k.pres;
    let mut out = check_hopf_axioms(p, HOPF_SUITE, max_degree, samples, seed);
    out.extend(bracket_homomorphism(k));
    out.push(confluence_probe(p, HOPF_SUITE, 1000, max_degree, seed ^ 0x51ed));
    out.push(pbw_spanning(k, 6, 200, seed));
    out.push(a_central(k));
    out
}

fn pairs_of(gens: &[Gen]) -> Vec<(Gen, Gen)> {
    let mut v = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            v.push((gens[i], gens[j]));
        }
    }
    v
}

/// Δ[a,b] = [Δa, Δb], S[a,b] = [S b, S a], ε[a,b] = 0 for all generator pairs.
pub fn bracket_homomorphism(k: &KAlgebra) -> Vec<CheckRecord> {
    let p = &k.pres;
    let pairs = pairs_of(&k.eleven());
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (x, y) = (AlgebraElement::gen(a), AlgebraElement::gen(b));
            let label = format!("[{}, {}]", p.gen_name(a), p.gen_name(b));
            let r = (|| -> Result<(Outcome, Outcome, Outcome), HopfError> {
                let br = p.commutator(&x, &y)?;
                let (dx, dy) = (p.coproduct(&x)?, p.coproduct(&y)?);
                let dcomm = p.tensor_mul(&dx, &dy)?.sub(&p.tensor_mul(&dy, &dx)?);
                let d = tensor_outcome(p, &p.coproduct(&br)?.sub(&dcomm));
                let (sx, sy) = (p.antipode(&x)?, p.antipode(&y)?);
                let s = element_outcome(p, &p.antipode(&br)?.sub(&p.commutator(&sy, &sx)?));
                let e = crate::hopfcore::scalar_outcome(&p.counit(&br)?);
                Ok((d, s, e))
            })();
            (label, r)
        })
        .collect();
    let mut td = Tally::new(HOPF_SUITE, "coproduct is a homomorphism on brackets");
    let mut ts = Tally::new(HOPF_SUITE, "antipode is an antihomomorphism on brackets");
    let mut te = Tally::new(HOPF_SUITE, "counit vanishes on brackets");
    for (label, r) in results {
        match r {
            Ok((d, s, e)) => {
                td.record(d, || label.clone());
                ts.record(s, || label.clone());
                te.record(e, || label.clone());
            }
            Err(e) => td.error(e, || label.clone()),
        }
    }
    vec![td.finish(), ts.finish(), te.finish()]
}

/// Random products of up to `max_len` generators land in the ordered basis.
pub fn pbw_spanning(k: &KAlgebra, max_len: usize, samples: usize, seed: u64) -> CheckRecord {
    use rand::SeedableRng;
    let p = &k.pres;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(101));
    let mut t = Tally::new(HOPF_SUITE, &format!("PBW spanning for products of <= {} generators", max_len));
    for _ in 0..samples {
        let w = random_raw_word(p, &mut rng, max_len);
        let e = AlgebraElement::term(Coefficient::one(), w.clone());
        match p.normal_form(&e) {
            Ok(nf) => {
                let bad = nf.terms().find(|(x, _)| !p.is_normal_word(x));
                t.record(
                    match bad {
                        Some((x, _)) => Outcome::Residual(format!("unordered word {}", p.render_word(x))),
                        None => Outcome::Zero,
                    },
                    || p.render_word(&w),
                );
            }
            Err(err) => t.error(err, || p.render_word(&w)),
        }
    }
    t.finish()
}

/// `A` commutes with momenta and rotations exactly.
pub fn a_central(k: &KAlgebra) -> CheckRecord {
    let p = &k.pres;
    let mut t = Tally::new(HOPF_SUITE, "A central in the momentum and rotation sector");
    for g in k.ten() {
        if matches!(k.kind(g), Kind::Boost(_)) {
            continue;
        }
        let x = AlgebraElement::gen(g);
        for a in [k.a(), k.a_inv()] {
            match p.commutator(&a, &x) {
                Ok(c) => t.record(element_outcome(p, &c), || p.gen_name(g).to_string()),
                Err(e) => t.error(e, || p.gen_name(g).to_string()),
            }
        }
    }
    t.finish()
}
