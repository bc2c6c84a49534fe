//! Momentum-space form of the hat generators on a wave packet.
//!
//! On an on-shell wave `W = :exp(-i p(q).x):` a generator gives
//! `X^ W = (alpha + beta_mu x^mu) W`. Since `D_i W = -i (D_i p_mu) x^mu W`,
//! the prefactor is `alpha + sum_i gamma_i D_i` once
//! `-i sum_i gamma_i D_i p_mu = beta_mu` is solved (four equations, three
//! unknowns). Integrating by parts against `d^3q / q0` moves the operator
//! onto the amplitude:
//! `X = -sum_i gamma_i D_i + alpha - q0 sum_i D_i(gamma_i / q0)`.

use crate::indrep::{build_tilde_generator, qderive, DiffOperator, RepConvention, Spin};
use crate::kalgebra::{KAlgebra, Kind};
use crate::report::CheckRecord;
use crate::scalars::{Coefficient, Var};

use super::hat::{hat_apply, XLowering};
use super::symbol::{Momentum, NormalSymbol};
use super::{KMinkError, EXTRACT_SUITE};

fn q0() -> Coefficient {
    Coefficient::var(Var::Q0)
}

/// Solves `J gamma = beta` for a 4x3 system over the function field and
/// checks the redundant row.
fn solve_overdetermined(j: &[[Coefficient; 3]; 4], beta: &[Coefficient; 4]) -> Result<[Coefficient; 3], KMinkError> {
    let mut rows: Vec<(Vec<Coefficient>, Coefficient)> = j.iter().zip(beta).map(|(r, b)| (r.to_vec(), b.clone())).collect();
    let mut pivot_rows = Vec::new();
    let mut used = vec![false; 4];
    for col in 0..3 {
        let piv = (0..4).find(|&r| !used[r] && !rows[r].0[col].is_zero()).ok_or_else(|| {
            KMinkError::Inconsistent(format!("Jacobian column {} vanishes", col + 1))
        })?;
        used[piv] = true;
        let inv = rows[piv].0[col].inv()?;
        let (prow, pb) = (rows[piv].0.iter().map(|x| x.mul_ref(&inv)).collect::<Vec<_>>(), rows[piv].1.mul_ref(&inv));
        rows[piv] = (prow.clone(), pb.clone());
        for r in 0..4 {
            if r == piv || rows[r].0[col].is_zero() {
                continue;
            }
            let f = rows[r].0[col].clone();
            let nr: Vec<Coefficient> = rows[r].0.iter().zip(&prow).map(|(a, b)| a.sub_ref(&b.mul_ref(&f))).collect();
            let nb = rows[r].1.sub_ref(&pb.mul_ref(&f));
            rows[r] = (nr, nb);
        }
        pivot_rows.push(piv);
    }
    let free = (0..4).find(|r| !used[*r]).expect("one row left");
    if !rows[free].1.is_zero() {
        return Err(KMinkError::Inconsistent(format!("redundant prefactor equation leaves {}", rows[free].1)));
    }
    Ok([0, 1, 2].map(|c| rows[pivot_rows[c]].1.clone()))
}

/// The momentum-space operator of a hat generator, at spin 0.
pub fn momentum_extract(kind: Kind, lowering: XLowering) -> Result<DiffOperator, KMinkError> {
    let p = Momentum::shell();
    let w = NormalSymbol::wave(p.clone());
    let image = hat_apply(kind, &w, lowering)?;
    let mut alpha = Coefficient::zero();
    let mut beta: [Coefficient; 4] = [0, 1, 2, 3].map(|_| Coefficient::zero());
    for (wave, m, coef) in image.terms() {
        if wave != Some(&p) {
            return Err(KMinkError::Inconsistent("image leaves the plane wave".into()));
        }
        let deg: u32 = m.iter().sum();
        match deg {
            0 => alpha = alpha.add_ref(coef),
            1 => {
                let mu = m.iter().position(|&e| e == 1).expect("degree one");
                beta[mu] = beta[mu].add_ref(coef);
            }
            _ => return Err(KMinkError::Inconsistent(format!("prefactor of degree {}", deg))),
        }
    }
    // J[mu][i] = -i D_i p_mu
    let mi = Coefficient::i().neg_ref();
    let jac: [[Coefficient; 3]; 4] = [0, 1, 2, 3].map(|mu| [1, 2, 3].map(|i| mi.mul_ref(&qderive(p.component(mu), i))));
    let gamma = if beta.iter().all(|b| b.is_zero()) {
        [Coefficient::zero(), Coefficient::zero(), Coefficient::zero()]
    } else {
        solve_overdetermined(&jac, &beta)?
    };
    let mut op = DiffOperator::multiplication(1, &alpha);
    let mut div = Coefficient::zero();
    for i in 0..3 {
        op.field[i] = gamma[i].neg_ref();
        div = div.add_ref(&qderive(&gamma[i].checked_div(&q0())?, i + 1));
    }
    Ok(op.add(&DiffOperator::multiplication(1, &q0().mul_ref(&div).neg_ref())))
}

/// `P = P~`, `M = -M~` at spin 0, for all ten generators.
pub fn extract_compare_suite(alg: &KAlgebra) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for g in alg.ten() {
        let kind = alg.kind(g);
        let name = alg.pres.gen_name(g);
        let tilde = build_tilde_generator(kind, Spin::Zero, RepConvention::default());
        let (want, label) = match kind {
            Kind::P(_) => (tilde, format!("momentum-space {} equals the induced {}", name, name)),
            _ => (tilde.scale(&Coefficient::from_int(-1)), format!("momentum-space {} equals minus the induced {}", name, name)),
        };
        out.push(match momentum_extract(kind, XLowering::Metric) {
            Ok(x) => {
                let r = x.sub(&want);
                if r.is_zero() {
                    CheckRecord::pass(EXTRACT_SUITE, label)
                } else {
                    CheckRecord::fail(EXTRACT_SUITE, label, r.to_string())
                }
            }
            Err(e) => CheckRecord::fail(EXTRACT_SUITE, label, e.to_string()),
        });
    }
    out
}
