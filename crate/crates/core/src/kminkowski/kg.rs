//! Deformed derivatives and the Klein-Gordon operator on symbols.
//!
//! Every exponential of `d/dx0` is an exact imaginary shift: `sin` and `cos`
//! of `(1/k) d/dx0` are half-differences and half-sums of `T_{+1}` and
//! `T_{-1}`. The `d0` inside the box operator is the plain derivative.

use crate::report::CheckRecord;
use crate::scalars::{coeff_series, Coefficient};

use super::hat::monomial_basis;
use super::symbol::{Momentum, NormalSymbol};
use super::{KMinkError, KG_SUITE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deriv {
    D0,
    D(usize),
    Box,
}

pub fn deformed_derivative(which: Deriv, f: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
    let k = Coefficient::kappa();
    let i = Coefficient::i();
    match which {
        // k sin(d0/k) + (i/2k) T_1 Lap
        Deriv::D0 => {
            let sin = f.shift_x0(1).sub(&f.shift_x0(-1))?.scale(&k.mul_ref(&i.mul_ref(&Coefficient::from_int(2)).inv()?));
            let lap = f.laplacian().shift_x0(1).scale(&i.mul_ref(&Coefficient::from_ratio(1, 2)).mul_ref(&Coefficient::inv_kappa()));
            sin.add(&lap)
        }
        // T_1 d_i
        Deriv::D(j) => Ok(f.partial(j).shift_x0(1)),
        // (k^2/4)(1 - cos(d0/k)) - (1/8) T_1 Lap
        Deriv::Box => {
            let cos = f.shift_x0(1).add(&f.shift_x0(-1))?.scale(&Coefficient::from_ratio(1, 2));
            let a = f.sub(&cos)?.scale(&k.mul_ref(&k).mul_ref(&Coefficient::from_ratio(1, 4)));
            a.sub(&f.laplacian().shift_x0(1).scale(&Coefficient::from_ratio(1, 8)))
        }
    }
}

/// `d0^2 - sum_i d_i^2 + m^2 (1 + m^2/4k^2)`.
pub fn kg_second_order(f: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
    let m2 = Coefficient::mass().pow(2);
    let k2 = Coefficient::kappa().pow(2);
    let mass_term = m2.mul_ref(&Coefficient::one().add_ref(&m2.checked_div(&k2.mul_ref(&Coefficient::from_int(4)))?));
    let mut out = deformed_derivative(Deriv::D0, &deformed_derivative(Deriv::D0, f)?)?;
    for j in 1..4 {
        out = out.sub(&deformed_derivative(Deriv::D(j), &deformed_derivative(Deriv::D(j), f)?)?)?;
    }
    out.add(&f.scale(&mass_term))
}

/// `-(16/k^2)(box + m^2/8)(box - k^2/2 - m^2/8)`.
pub fn kg_factored(f: &NormalSymbol) -> Result<NormalSymbol, KMinkError> {
    let m2_8 = Coefficient::mass().pow(2).mul_ref(&Coefficient::from_ratio(1, 8));
    let k2 = Coefficient::kappa().pow(2);
    let inner_shift = k2.mul_ref(&Coefficient::from_ratio(1, 2)).add_ref(&m2_8);
    let g = deformed_derivative(Deriv::Box, f)?.sub(&f.scale(&inner_shift))?;
    let h = deformed_derivative(Deriv::Box, &g)?.add(&g.scale(&m2_8))?;
    Ok(h.scale(&Coefficient::from_int(-16).checked_div(&k2)?))
}

/// `M^2 = 2 k^2 (c - 1) = 4 k^2 sinh^2(m/2k)`.
pub fn deformed_mass_square() -> Coefficient {
    let k2 = Coefficient::kappa().pow(2);
    Coefficient::from_int(2).mul_ref(&k2).mul_ref(&Coefficient::cosh().sub_ref(&Coefficient::one()))
}

fn check(name: &str, r: Result<NormalSymbol, KMinkError>) -> CheckRecord {
    match r {
        Ok(z) if z.is_zero() => CheckRecord::pass(KG_SUITE, name),
        Ok(z) => CheckRecord::fail(KG_SUITE, name, z.to_string()),
        Err(e) => CheckRecord::fail(KG_SUITE, name, e.to_string()),
    }
}

pub fn kg_suite(order: i32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let wave = NormalSymbol::wave(Momentum::symbolic(0));
    out.push(check(
        "second-order form equals the factored box form on a free plane wave",
        kg_second_order(&wave).and_then(|a| a.sub(&kg_factored(&wave)?)),
    ));
    let basis = monomial_basis(3);
    let mut res: Result<NormalSymbol, KMinkError> = Ok(NormalSymbol::zero());
    for f in &basis {
        let r = kg_second_order(f).and_then(|a| a.sub(&kg_factored(f)?));
        if !matches!(&r, Ok(z) if z.is_zero()) {
            res = r;
            break;
        }
    }
    out.push(check(&format!("the same factorization on monomials of degree <= 3 [{} cases]", basis.len()), res));

    // derivatives commute
    let mut res: Result<NormalSymbol, KMinkError> = Ok(NormalSymbol::zero());
    let ops = [Deriv::D0, Deriv::D(1), Deriv::D(2), Deriv::D(3)];
    'outer: for f in basis.iter().chain(std::iter::once(&wave)) {
        for (n, &a) in ops.iter().enumerate() {
            for &b in &ops[n + 1..] {
                let r = (|| {
                    deformed_derivative(a, &deformed_derivative(b, f)?)?
                        .sub(&deformed_derivative(b, &deformed_derivative(a, f)?)?)
                })();
                if !matches!(&r, Ok(z) if z.is_zero()) {
                    res = r;
                    break 'outer;
                }
            }
        }
    }
    out.push(check("deformed derivatives commute", res));

    let shell = NormalSymbol::wave(Momentum::shell());
    let m2 = deformed_mass_square();
    out.push(check(
        "(box + M^2/8) annihilates an on-shell plane wave, M^2 = 2 k^2 (c - 1)",
        deformed_derivative(Deriv::Box, &shell).and_then(|b| b.add(&shell.scale(&m2.mul_ref(&Coefficient::from_ratio(1, 8))))),
    ));

    let limit = coeff_series(&m2, order).map_err(|e| e.to_string()).and_then(|s| {
        for n in s.lowest..0 {
            if !s.coeff(n).is_zero() {
                return Err(format!("positive power k^{}", -n));
            }
        }
        let r = s.coeff(0).sub_ref(&Coefficient::mass().pow(2));
        if r.is_zero() {
            Ok(())
        } else {
            Err(r.to_string())
        }
    });
    out.push(match limit {
        Ok(()) => CheckRecord::pass(KG_SUITE, "M^2 -> m^2 as k -> oo"),
        Err(r) => CheckRecord::fail(KG_SUITE, "M^2 -> m^2 as k -> oo", r),
    });
    out
}

/// Residual of the factorization when the `d0` inside the box operator is
/// read as the deformed derivative. Evaluated on a wave at rest with
/// `p0 = m` (so `E = c + s` and the deformed `d0` has eigenvalue `-i k s`),
/// with `cosh` of that eigenvalue expanded to `s^(2 terms)`. Returns the
/// `1/k` series of (second-order form) - (factored form).
pub fn deformed_reading_residual(terms: u32, order: i32) -> Result<Vec<(i32, Coefficient)>, KMinkError> {
    let (k, m, s) = (Coefficient::kappa(), Coefficient::mass(), Coefficient::sinh());
    let k2 = k.pow(2);
    let m2 = m.pow(2);
    // cos(d0/k) with d0 = -i k s is cosh(s)
    let mut cosh_s = Coefficient::zero();
    let mut fact = 1i64;
    for n in 0..=terms {
        if n > 0 {
            fact *= ((2 * n - 1) * (2 * n)) as i64;
        }
        cosh_s = cosh_s.add_ref(&s.pow(2 * n).mul_ref(&Coefficient::from_ratio(1, fact)));
    }
    let boxv = k2.mul_ref(&Coefficient::from_ratio(1, 4)).mul_ref(&Coefficient::one().sub_ref(&cosh_s));
    let d0_sq = k2.mul_ref(&s.pow(2)).neg_ref();
    let lhs = d0_sq.add_ref(&m2).add_ref(&m2.pow(2).checked_div(&k2.mul_ref(&Coefficient::from_int(4)))?);
    let m2_8 = m2.mul_ref(&Coefficient::from_ratio(1, 8));
    let rhs = Coefficient::from_int(-16)
        .checked_div(&k2)?
        .mul_ref(&boxv.add_ref(&m2_8))
        .mul_ref(&boxv.sub_ref(&k2.mul_ref(&Coefficient::from_ratio(1, 2))).sub_ref(&m2_8));
    let ser = coeff_series(&lhs.sub_ref(&rhs), order)?;
    Ok((ser.lowest..=order).map(|n| (n, ser.coeff(n))).filter(|(_, c)| !c.is_zero()).collect())
}
