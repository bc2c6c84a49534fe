//! Normal-ordered symbols `:f:` and their star product.

use std::collections::BTreeMap;
use std::fmt;

use crate::hopfcore::render_sum;
use crate::indrep::deform_momentum;
use crate::scalars::{Coefficient, Var};

use super::KMinkError;

/// Exponents of `x0, x1, x2, x3`.
pub type XMono = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentumMode {
    /// Free symbols `p0, E = exp(p0/k), p1, p2, p3`.
    Symbolic,
    /// On-shell momenta of the induced representation, as functions of `q`.
    Shell,
}

/// Momentum of the plane wave `:exp(-i(p0 x0 + p_j x^j)):`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Momentum {
    pub mode: MomentumMode,
    pub p0: Coefficient,
    /// `exp(p0/k)`.
    pub e: Coefficient,
    pub p: [Coefficient; 3],
}

impl Momentum {
    /// Free momentum symbols of wave slot `a`.
    pub fn symbolic(a: usize) -> Momentum {
        Momentum {
            mode: MomentumMode::Symbolic,
            p0: Coefficient::var(Var::wave_energy(a)),
            e: Coefficient::var(Var::wave_exp(a)),
            p: [1, 2, 3].map(|j| Coefficient::var(Var::wave_momentum(a, j))),
        }
    }

    /// `p0 = l`, `E = u/m`, `p_j = -k s q_j/u`.
    pub fn shell() -> Momentum {
        let (e, p) = deform_momentum();
        Momentum { mode: MomentumMode::Shell, p0: Coefficient::var(Var::LOG), e, p }
    }

    pub fn e_inv(&self) -> Coefficient {
        self.e.inv().expect("E is invertible")
    }

    /// `E^n` for any integer `n`.
    pub fn e_pow(&self, n: i64) -> Coefficient {
        if n >= 0 {
            self.e.pow(n as u32)
        } else {
            self.e_inv().pow((-n) as u32)
        }
    }

    /// Component `p_mu` (lower index, as carried by the wave).
    pub fn component(&self, mu: usize) -> &Coefficient {
        if mu == 0 {
            &self.p0
        } else {
            &self.p[mu - 1]
        }
    }

    /// Pointwise product of two waves inside one symbol.
    fn times(&self, o: &Momentum) -> Result<Momentum, KMinkError> {
        check_modes(self, o)?;
        Ok(Momentum {
            mode: self.mode,
            p0: self.p0.add_ref(&o.p0),
            e: self.e.mul_ref(&o.e),
            p: [0, 1, 2].map(|j| self.p[j].add_ref(&o.p[j])),
        })
    }

    fn scale_spatial(&self, f: &Coefficient) -> Momentum {
        Momentum { p: [0, 1, 2].map(|j| self.p[j].mul_ref(f)), ..self.clone() }
    }

    /// Momentum of `wave(self) * wave(o)` in the noncommutative product:
    /// `(p + p')_0 = p0 + p0'`, `(p + p')_j = p_j / E' + p'_j`.
    pub fn compose(&self, o: &Momentum) -> Result<Momentum, KMinkError> {
        self.scale_spatial(&o.e_inv()).times(o)
    }
}

fn check_modes(a: &Momentum, b: &Momentum) -> Result<(), KMinkError> {
    if a.mode != b.mode {
        return Err(KMinkError::ModeMismatch);
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Block {
    wave: Option<Momentum>,
    poly: BTreeMap<XMono, Coefficient>,
}

/// Finite sum of `c * x0^a x1^b x2^c x3^d * wave`, standing for the
/// normal-ordered element with every `x0` leftmost.
#[derive(Clone, Debug, Default)]
pub struct NormalSymbol {
    blocks: Vec<Block>,
}

impl PartialEq for NormalSymbol {
    fn eq(&self, o: &NormalSymbol) -> bool {
        self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl NormalSymbol {
    pub fn zero() -> Self {
        NormalSymbol::default()
    }

    pub fn one() -> Self {
        NormalSymbol::monomial([0; 4], Coefficient::one())
    }

    pub fn scalar(c: Coefficient) -> Self {
        NormalSymbol::monomial([0; 4], c)
    }

    pub fn x(mu: usize) -> Self {
        let mut m = [0; 4];
        m[mu] = 1;
        NormalSymbol::monomial(m, Coefficient::one())
    }

    pub fn monomial(m: XMono, c: Coefficient) -> Self {
        let mut s = NormalSymbol::zero();
        s.add_term(None, m, c).expect("no wave");
        s
    }

    /// `:x^m exp(-i p x):`.
    pub fn wave(p: Momentum) -> Self {
        NormalSymbol::wave_monomial(p, [0; 4], Coefficient::one())
    }

    pub fn wave_monomial(p: Momentum, m: XMono, c: Coefficient) -> Self {
        let mut s = NormalSymbol::zero();
        s.add_term(Some(&p), m, c).expect("single wave");
        s
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.poly.values().all(|c| c.is_zero()))
    }

    /// `(wave, monomial, coefficient)` triples.
    pub fn terms(&self) -> impl Iterator<Item = (Option<&Momentum>, &XMono, &Coefficient)> {
        self.blocks.iter().flat_map(|b| b.poly.iter().map(move |(m, c)| (b.wave.as_ref(), m, c)))
    }

    pub fn waves(&self) -> Vec<Option<&Momentum>> {
        self.blocks.iter().map(|b| b.wave.as_ref()).collect()
    }

    /// Polynomial part multiplying the given wave.
    pub fn poly_of(&self, wave: Option<&Momentum>) -> BTreeMap<XMono, Coefficient> {
        self.blocks.iter().find(|b| b.wave.as_ref() == wave).map(|b| b.poly.clone()).unwrap_or_default()
    }

    fn block_mut(&mut self, wave: Option<&Momentum>) -> Result<&mut Block, KMinkError> {
        for b in &self.blocks {
            if let (Some(x), Some(y)) = (&b.wave, wave) {
                check_modes(x, y)?;
            }
        }
        let idx = match self.blocks.iter().position(|b| b.wave.as_ref() == wave) {
            Some(i) => i,
            None => {
                self.blocks.push(Block { wave: wave.cloned(), poly: BTreeMap::new() });
                self.blocks.len() - 1
            }
        };
        Ok(&mut self.blocks[idx])
    }

    pub fn add_term(&mut self, wave: Option<&Momentum>, m: XMono, c: Coefficient) -> Result<(), KMinkError> {
        if c.is_zero() {
            return Ok(());
        }
        let b = self.block_mut(wave)?;
        let slot = b.poly.entry(m).or_insert_with(Coefficient::zero);
        *slot = slot.add_ref(&c);
        if slot.is_zero() {
            b.poly.remove(&m);
        }
        Ok(())
    }

    fn prune(mut self) -> Self {
        self.blocks.retain(|b| !b.poly.is_empty());
        self
    }

    pub fn add(&self, o: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
        let mut out = self.clone();
        for (w, m, c) in o.terms() {
            out.add_term(w, *m, c.clone())?;
        }
        Ok(out.prune())
    }

    pub fn sub(&self, o: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
        self.add(&o.scale(&Coefficient::from_int(-1)))
    }

    pub fn scale(&self, c: &Coefficient) -> NormalSymbol {
        let mut out = NormalSymbol::zero();
        for (w, m, x) in self.terms() {
            out.add_term(w, *m, x.mul_ref(c)).expect("modes already consistent");
        }
        out.prune()
    }

    /// Term-wise map of the polynomial part, keeping waves.
    fn map_terms(
        &self,
        f: impl Fn(Option<&Momentum>, &XMono, &Coefficient, &mut NormalSymbol) -> Result<(), KMinkError>,
    ) -> Result<NormalSymbol, KMinkError> {
        let mut out = NormalSymbol::zero();
        for (w, m, c) in self.terms() {
            f(w, m, c, &mut out)?;
        }
        Ok(out.prune())
    }

    /// Classical partial derivative `d f / d x^mu`.
    pub fn partial(&self, mu: usize) -> NormalSymbol {
        self.map_terms(|w, m, c, out| {
            if m[mu] > 0 {
                let mut m2 = *m;
                m2[mu] -= 1;
                out.add_term(w, m2, c.mul_ref(&Coefficient::from_int(m[mu] as i64)))?;
            }
            if let Some(p) = w {
                let f = Coefficient::i().neg_ref().mul_ref(p.component(mu));
                out.add_term(w, *m, c.mul_ref(&f))?;
            }
            Ok(())
        })
        .expect("modes already consistent")
    }

    /// Classical multiplication by `x^mu`.
    pub fn times_x(&self, mu: usize) -> NormalSymbol {
        self.map_terms(|w, m, c, out| {
            let mut m2 = *m;
            m2[mu] += 1;
            out.add_term(w, m2, c.clone())
        })
        .expect("modes already consistent")
    }

    /// Spatial Laplacian.
    pub fn laplacian(&self) -> NormalSymbol {
        let mut out = NormalSymbol::zero();
        for j in 1..4 {
            out = out.add(&self.partial(j).partial(j)).expect("same waves");
        }
        out
    }

    /// `f(x0) -> f(x0 + n i/k)`; a wave picks up `E^n`.
    pub fn shift_x0(&self, n: i64) -> NormalSymbol {
        let step = Coefficient::i().mul_ref(&Coefficient::from_int(n)).mul_ref(&Coefficient::inv_kappa());
        self.map_terms(|w, m, c, out| {
            let base = match w {
                Some(p) => c.mul_ref(&p.e_pow(n)),
                None => c.clone(),
            };
            let a = m[0];
            for j in 0..=a {
                let mut m2 = *m;
                m2[0] = a - j;
                let coef = base.mul_ref(&Coefficient::from_int(binomial(a, j))).mul_ref(&step.pow(j));
                out.add_term(w, m2, coef)?;
            }
            Ok(())
        })
        .expect("modes already consistent")
    }

    /// Product of the underlying elements, re-expressed in normal order.
    pub fn star(&self, o: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
        let mut out = NormalSymbol::zero();
        for a in &self.blocks {
            for b in &o.blocks {
                star_blocks(a, b, &mut out)?;
            }
        }
        Ok(out.prune())
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for t in 0..k {
        r = r * (n - t) as i64 / (t + 1) as i64;
    }
    r
}

/// Spatial function `sum_gamma c_gamma x^gamma` times `exp(-i p.x)`.
type Spatial = BTreeMap<[u32; 3], Coefficient>;

/// Euler operator `x.grad` on `sum c x^gamma exp(-i p.x)`.
fn euler(f: &Spatial, p: Option<&Momentum>) -> Spatial {
    let mut out = Spatial::new();
    let mut put = |g: [u32; 3], c: Coefficient| {
        if c.is_zero() {
            return;
        }
        let slot = out.entry(g).or_insert_with(Coefficient::zero);
        *slot = slot.add_ref(&c);
    };
    for (g, c) in f {
        let deg: u32 = g.iter().sum();
        if deg > 0 {
            put(*g, c.mul_ref(&Coefficient::from_int(deg as i64)));
        }
        if let Some(p) = p {
            for j in 0..3 {
                let mut g2 = *g;
                g2[j] += 1;
                put(g2, c.mul_ref(&p.p[j]).mul_ref(&Coefficient::i().neg_ref()));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

// x^alpha exp(-i p.x) h(x0) = h(x0 - i N/k) [x^alpha exp(-i p.x)], N the
// spatial Euler operator. For h = x0^b exp(-i p0' x0) this is
// sum_k C(b,k) (-i/k)^k x0^(b-k) exp(-i p0' x0) [N^k F](x / E').
fn star_blocks(a: &Block, b: &Block, out: &mut NormalSymbol) -> Result<(), KMinkError> {
    let (wa, wb) = (a.wave.as_ref(), b.wave.as_ref());
    if let (Some(x), Some(y)) = (wa, wb) {
        check_modes(x, y)?;
    }
    let e_inv = wb.map(|w| w.e_inv()).unwrap_or_else(Coefficient::one);
    let wave = match (wa, wb) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(y.clone()),
        (Some(x), Some(y)) => Some(x.compose(y)?),
    };
    let minus_i_k = Coefficient::i().neg_ref().mul_ref(&Coefficient::inv_kappa());
    let max_b = b.poly.keys().map(|m| m[0]).max().unwrap_or(0);
    let e_inv_pows: Vec<Coefficient> = (0..=16).map(|n| e_inv.pow(n)).collect();
    for (ma, ca) in &a.poly {
        let mut f: Spatial = Spatial::new();
        f.insert([ma[1], ma[2], ma[3]], Coefficient::one());
        // N^k F for k = 0..=max_b, already rescaled to x / E'
        let mut scaled = Vec::new();
        for k in 0..=max_b {
            if k > 0 {
                f = euler(&f, wa);
            }
            let s: Vec<([u32; 3], Coefficient)> = f
                .iter()
                .map(|(g, c)| {
                    let d = g.iter().sum::<u32>() as usize;
                    let pw = if d < e_inv_pows.len() { e_inv_pows[d].clone() } else { e_inv.pow(d as u32) };
                    (*g, c.mul_ref(&pw))
                })
                .collect();
            scaled.push(s);
        }
        for (mb, cb) in &b.poly {
            let bb = mb[0];
            for k in 0..=bb {
                let pre = ca
                    .mul_ref(cb)
                    .mul_ref(&Coefficient::from_int(binomial(bb, k)))
                    .mul_ref(&minus_i_k.pow(k));
                for (g, c) in &scaled[k as usize] {
                    let m = [ma[0] + bb - k, g[0] + mb[1], g[1] + mb[2], g[2] + mb[3]];
                    out.add_term(wave.as_ref(), m, pre.mul_ref(c))?;
                }
            }
        }
    }
    Ok(())
}

fn render_mono(m: &XMono) -> String {
    let mut parts = Vec::new();
    for (mu, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x[{}]", mu)),
            _ => parts.push(format!("x[{}]^{}", mu, e)),
        }
    }
    parts.join("*")
}

fn render_wave(p: &Momentum) -> String {
    let comps: Vec<String> = (0..4).map(|mu| p.component(mu).to_string()).collect();
    format!("wave({}; E = {})", comps.join(", "), p.e)
}

impl fmt::Display for NormalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, &Coefficient, u32)> = Vec::new();
        for (w, m, c) in self.terms() {
            let mut body = render_mono(m);
            if let Some(p) = w {
                let wv = render_wave(p);
                body = if body.is_empty() { wv } else { format!("{}*{}", body, wv) };
            }
            terms.push((body, c, m.iter().sum()));
        }
        // higher degree first, then by body text
        terms.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
        write!(f, "{}", render_sum(terms.into_iter().map(|(b, c, _)| (b, c))))
    }
}
