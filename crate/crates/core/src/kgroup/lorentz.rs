//! Membership test for the ideal of Lorentz orthogonality relations.
//!
//! The group presentation treats the sixteen matrix coordinates as free
//! commuting symbols, but the antipode law on them only holds on the
//! orthogonal group. A residual lies in the two-sided ideal generated by
//! `Lambda^T g Lambda - g` iff, with matrix coordinates pulled to the left by
//! normal ordering, every matrix-coordinate coefficient vanishes on O(1,3).
//! We test that at exact rational points: the Cayley transform of random
//! rational Lie-algebra elements, multiplied by the parity and time-reversal
//! representatives so every component of O(1,3) is hit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hopfcore::{AlgebraElement, Gen, ResidualTest, TensorElement, Word};
use crate::metric;
use crate::scalars::{Coefficient, Gauss};

pub type Matrix4 = [[BigRational; 4]; 4];

fn identity() -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() }))
}

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

fn mat_inverse(m: &Matrix4) -> Option<Matrix4> {
    let mut a = m.clone();
    let mut inv = identity();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..4 {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..4 {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

/// Whether `m^T g m = g`.
pub fn is_lorentz(m: &Matrix4) -> bool {
    (0..4).all(|a| {
        (0..4).all(|b| {
            let s = (0..4).fold(BigRational::zero(), |acc, mu| {
                acc + &m[mu][a] * &m[mu][b] * BigRational::from_integer(metric::g(mu).into())
            });
            s == BigRational::from_integer(metric::g2(a, b).into())
        })
    })
}

/// Random exact Lorentz matrix in the component selected by `component % 4`.
pub fn random_lorentz(rng: &mut ChaCha8Rng, component: usize) -> Matrix4 {
    loop {
        // X = g A with A antisymmetric, so g X is antisymmetric.
        let mut a: Matrix4 = std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()));
        for i in 0..4 {
            for j in i + 1..4 {
                let v = BigRational::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4)));
                a[i][j] = v.clone();
                a[j][i] = -v;
            }
        }
        let x: Matrix4 =
            std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * BigRational::from_integer(metric::g(i).into())));
        let id = identity();
        let plus: Matrix4 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] + &x[i][j]));
        let minus: Matrix4 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] - &x[i][j]));
        let Some(mi) = mat_inverse(&minus) else { continue };
        let mut l = mat_mul(&plus, &mi);
        // a boost parameter above 1 lands in the non-orthochronous part of
        // SO(1,3); -L is back in the identity component
        if l[0][0] < BigRational::zero() {
            for e in l.iter_mut().flatten() {
                *e = -e.clone();
            }
        }
        let (flip_space, flip_time) = (component % 2 == 1, (component / 2) % 2 == 1);
        for (mu, row) in l.iter_mut().enumerate() {
            let flip = if mu == 0 { flip_time } else { flip_space };
            if flip {
                for e in row.iter_mut() {
                    *e = -e.clone();
                }
            }
        }
        debug_assert!(is_lorentz(&l));
        return l;
    }
}

/// Residual test evaluating matrix coordinates at exact Lorentz points.
pub struct LorentzIdeal {
    /// Handle of `Lambda^mu_nu` is `lambda[mu][nu]`; handles at or above
    /// `first_other` are not matrix coordinates.
    lambda: [[Gen; 4]; 4],
    first_other: Gen,
    points: Vec<Matrix4>,
    attempts: usize,
}

impl LorentzIdeal {
    pub fn new(lambda: [[Gen; 4]; 4], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let attempts = 3;
        let points = (0..attempts * 3).map(|k| random_lorentz(&mut rng, k)).collect();
        let first_other = lambda.iter().flatten().copied().max().unwrap() + 1;
        LorentzIdeal { lambda, first_other, points, attempts }
    }

    fn entry(&self, g: Gen, point: &Matrix4) -> BigRational {
        for mu in 0..4 {
            for nu in 0..4 {
                if self.lambda[mu][nu] == g {
                    return point[mu][nu].clone();
                }
            }
        }
        unreachable!("not a matrix coordinate")
    }

    /// Splits a normal word into the value of its matrix-coordinate prefix
    /// and the remaining suffix.
    fn split(&self, w: &Word, point: &Matrix4) -> (BigRational, Word) {
        let mut val = BigRational::one();
        let mut i = 0;
        while i < w.len() && w.gens()[i] < self.first_other {
            val *= self.entry(w.gens()[i], point);
            i += 1;
        }
        (val, Word(w.gens()[i..].to_vec()))
    }

    fn tensor_vanishes_at(&self, t: &TensorElement, pts: &[&Matrix4]) -> bool {
        let mut acc: BTreeMap<Vec<Word>, Coefficient> = BTreeMap::new();
        for (slots, c) in t.terms() {
            let mut val = BigRational::one();
            let mut rest = Vec::with_capacity(slots.len());
            for (s, w) in slots.iter().enumerate() {
                let (v, r) = self.split(w, pts[s]);
                val *= v;
                rest.push(r);
            }
            if val.is_zero() {
                continue;
            }
            let term = c.scale(&Gauss::from_rational(val));
            let e = acc.entry(rest).or_insert_with(Coefficient::zero);
            *e = e.add_ref(&term);
        }
        acc.values().all(Coefficient::is_zero)
    }
}

impl ResidualTest for LorentzIdeal {
    fn element_vanishes(&self, e: &AlgebraElement) -> bool {
        let mut t = TensorElement::zero(1);
        for (w, c) in e.terms() {
            t.add_term(vec![w.clone()], c);
        }
        self.tensor_vanishes(&t)
    }

    fn tensor_vanishes(&self, t: &TensorElement) -> bool {
        let r = t.rank();
        (0..self.attempts).all(|a| {
            let pts: Vec<&Matrix4> = (0..r).map(|s| &self.points[(a * r + s) % self.points.len()]).collect();
            self.tensor_vanishes_at(t, &pts)
        })
    }

    fn describe(&self) -> String {
        "Lorentz orthogonality ideal".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_points_are_lorentz_in_every_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 0..8 {
            let l = random_lorentz(&mut rng, k);
            assert!(is_lorentz(&l));
            let time_sign = l[0][0] > BigRational::zero();
            assert_eq!(time_sign, (k / 2) % 2 == 0);
        }
    }
}
