//! Laurent expansion at `k = infinity` in the variable `t = 1/k`, with
//! `c = cosh(m t)` and `s = sinh(m t)` replaced by their Taylor series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coefficient::Coefficient;
use super::poly::{Mono, Poly, Var};
use super::ScalarError;

/// Truncated Laurent series `sum_n coeffs[n - lowest] k^(-n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaSeries {
    /// Power of `1/k` carried by `coeffs[0]`.
    pub lowest: i32,
    pub coeffs: Vec<Coefficient>,
}

impl KappaSeries {
    /// Coefficient of `k^(-n)` (zero outside the stored window).
    pub fn coeff(&self, n: i32) -> Coefficient {
        let idx = n - self.lowest;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Coefficient::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Highest stored power of `1/k`.
    pub fn order(&self) -> i32 {
        self.lowest + self.coeffs.len() as i32 - 1
    }

    /// Product, truncated to the common order.
    pub fn mul(&self, o: &KappaSeries, order: i32) -> KappaSeries {
        let lowest = self.lowest + o.lowest;
        let len = (order - lowest + 1).max(0) as usize;
        let mut coeffs = vec![Coefficient::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        KappaSeries { lowest, coeffs }
    }

    /// Re-assembles the truncated series as a `Coefficient` in `k`.
    pub fn to_coefficient(&self) -> Coefficient {
        let mut acc = Coefficient::zero();
        let k = Coefficient::kappa();
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = self.lowest + i as i32;
            let p = k.powi(-n).expect("k is nonzero");
            acc = acc.add_ref(&c.mul_ref(&p));
        }
        acc
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// Power series in `t` with `len` known coefficients.
type PSeries = Vec<Coefficient>;

fn ps_mul(a: &PSeries, b: &PSeries, len: usize) -> PSeries {
    let mut out = vec![Coefficient::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

fn hyperbolic(odd: bool, len: usize) -> PSeries {
    let m = Coefficient::mass();
    (0..len)
        .map(|n| {
            if (n % 2 == 1) == odd {
                let f = Coefficient::from(BigRational::new(BigInt::one(), factorial(n as u32)));
                m.pow(n as u32).mul_ref(&f)
            } else {
                Coefficient::zero()
            }
        })
        .collect()
}

/// Expands `k^d * p(k, c, s, ...)` where `d` is the `k`-degree of `p`.
fn poly_series(p: &Poly, len: usize) -> (u32, PSeries) {
    let d = p.degree_in(Var::KAPPA);
    let cs = hyperbolic(false, len);
    let ss = hyperbolic(true, len);
    let max_s = p.degree_in(Var::SINH) as usize;
    let mut s_pows = vec![{
        let mut one = vec![Coefficient::zero(); len];
        if len > 0 {
            one[0] = Coefficient::one();
        }
        one
    }];
    for k in 1..=max_s {
        let next = ps_mul(&s_pows[k - 1], &ss, len);
        s_pows.push(next);
    }
    let mut out = vec![Coefficient::zero(); len];
    for (m, g) in p.terms() {
        let e_k = m[Var::KAPPA.index()] as u32;
        let e_c = m[Var::COSH.index()] as usize;
        let e_s = m[Var::SINH.index()] as usize;
        let mut rest: Mono = *m;
        rest[Var::KAPPA.index()] = 0;
        rest[Var::COSH.index()] = 0;
        rest[Var::SINH.index()] = 0;
        let scalar = Coefficient::from_poly(Poly::from_terms(vec![(rest, g.clone())]));
        let shift = (d - e_k) as usize;
        if shift >= len {
            continue;
        }
        let mut ser = s_pows[e_s].clone();
        if e_c == 1 {
            ser = ps_mul(&ser, &cs, len);
        }
        for (i, x) in ser.iter().enumerate() {
            if i + shift >= len || x.is_zero() {
                continue;
            }
            out[i + shift] = out[i + shift].add_ref(&x.mul_ref(&scalar));
        }
    }
    (d, out)
}

fn valuation(s: &PSeries) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// Laurent expansion of `x` at `k = infinity` up to and including `k^(-order)`.
///
/// Inputs may involve other symbols (`m`, `q_i`, ...); those end up in the
/// series coefficients.
pub fn coeff_series(x: &Coefficient, order: i32) -> Result<KappaSeries, ScalarError> {
    if x.is_zero() {
        return Ok(KappaSeries { lowest: order + 1, coeffs: Vec::new() });
    }
    let num = x.numerator().clone();
    let den = x.denominator();
    let mut len = (order.max(0) as usize) + 4 + (num.degree_in(Var::KAPPA) + den.degree_in(Var::KAPPA)) as usize;
    loop {
        if len > 96 {
            return Err(ScalarError::Unsupported(format!("no Laurent expansion found for {}", x)));
        }
        let (dn, ns) = poly_series(&num, len);
        let (dd, ds) = poly_series(&den, len);
        let (vn, vd) = match (valuation(&ns), valuation(&ds)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                len *= 2;
                continue;
            }
        };
        let rel = (len - vn).min(len - vd);
        let lowest = dd as i32 - dn as i32 + vn as i32 - vd as i32;
        if lowest + rel as i32 - 1 < order {
            len += (order - (lowest + rel as i32 - 1)) as usize + 2;
            continue;
        }
        let a: Vec<Coefficient> = ns[vn..vn + rel].to_vec();
        let b: Vec<Coefficient> = ds[vd..vd + rel].to_vec();
        let b0_inv = b[0].inv()?;
        let want = (order - lowest + 1).max(0) as usize;
        let mut q: Vec<Coefficient> = Vec::with_capacity(want);
        for n in 0..want {
            let mut acc = a[n].clone();
            for j in 1..=n {
                if !b[j].is_zero() {
                    acc = acc.sub_ref(&b[j].mul_ref(&q[n - j]));
                }
            }
            q.push(acc.mul_ref(&b0_inv));
        }
        return Ok(KappaSeries { lowest, coeffs: q });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> Coefficient {
        Coefficient::mass()
    }

    #[test]
    fn sinh_series() {
        let s = coeff_series(&Coefficient::sinh(), 3).unwrap();
        assert_eq!(s.coeff(0), Coefficient::zero());
        assert_eq!(s.coeff(1), m());
        assert_eq!(s.coeff(2), Coefficient::zero());
        assert_eq!(s.coeff(3), m().pow(3).mul_ref(&Coefficient::from_ratio(1, 6)));
    }

    #[test]
    fn cosh_series() {
        let c = coeff_series(&Coefficient::cosh(), 2).unwrap();
        assert_eq!(c.coeff(0), Coefficient::one());
        assert_eq!(c.coeff(1), Coefficient::zero());
        assert_eq!(c.coeff(2), m().pow(2).mul_ref(&Coefficient::from_ratio(1, 2)));
    }

    #[test]
    fn inverse_exponential() {
        let x = Coefficient::one().checked_div(&(Coefficient::cosh() + Coefficient::sinh())).unwrap();
        let ser = coeff_series(&x, 2).unwrap();
        assert_eq!(ser.coeff(0), Coefficient::one());
        assert_eq!(ser.coeff(1), -m());
        assert_eq!(ser.coeff(2), m().pow(2).mul_ref(&Coefficient::from_ratio(1, 2)));
    }

    #[test]
    fn positive_powers_of_kappa() {
        // k^2 (c - 1) -> m^2/2 + m^4/(24 k^2)
        let x = Coefficient::kappa().pow(2).mul_ref(&(Coefficient::cosh() - Coefficient::one()));
        let ser = coeff_series(&x, 2).unwrap();
        assert_eq!(ser.lowest, 0);
        assert_eq!(ser.coeff(0), m().pow(2).mul_ref(&Coefficient::from_ratio(1, 2)));
        assert_eq!(ser.coeff(2), m().pow(4).mul_ref(&Coefficient::from_ratio(1, 24)));
        let y = Coefficient::kappa().mul_ref(&Coefficient::from_int(3));
        let ser = coeff_series(&y, 1).unwrap();
        assert_eq!(ser.lowest, -1);
        assert_eq!(ser.coeff(-1), Coefficient::from_int(3));
    }
}
