//! Exact coefficient arithmetic shared by every other module.
//!
//! All scalars live in one ring: Gaussian-rational polynomials in the formal
//! indeterminates `k` (the deformation parameter), `m`, `c = cosh(m/k)`,
//! `s = sinh(m/k)`, the hyperboloid coordinates `q0..q3`, a formal log symbol
//! `l`, and three sets of plane-wave momentum symbols. The ring is taken
//! modulo `c^2 = 1 + s^2` and `q0^2 = q1^2 + q2^2 + q3^2 + m^2`; reduced
//! forms keep the degree in `c` and in `q0` at most one.

mod coefficient;
mod gauss;
mod poly;
mod series;

pub use coefficient::{mono_of, Atom, Coefficient};
pub use gauss::Gauss;
pub use poly::{Mono, Poly, Var, NVARS, ONE_MONO};
pub use series::{coeff_series, KappaSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Normalizes a raw fraction of polynomials into canonical form.
pub fn coeff_normalize(num: Poly, den: Poly) -> Result<Coefficient, ScalarError> {
    Coefficient::normalize(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_coefficient() -> impl Strategy<Value = Coefficient> {
        let vars = [Var::KAPPA, Var::MASS, Var::COSH, Var::SINH];
        proptest::collection::vec((-3i64..=3, -2i64..=2, 0usize..4, 0u8..3, 0usize..4, 0u8..2), 1..4).prop_map(
            move |terms| {
                let mut acc = Coefficient::zero();
                for (re, im, v1, e1, v2, e2) in terms {
                    let g = Gauss::new(
                        num_rational::BigRational::from_integer(re.into()),
                        num_rational::BigRational::from_integer(im.into()),
                    );
                    let p = Poly::constant(g)
                        .mul(&Poly::var_pow(vars[v1], e1))
                        .mul(&Poly::var_pow(vars[v2], e2));
                    acc = acc.add_ref(&Coefficient::from_poly(p));
                }
                acc
            },
        )
    }

    fn small_fraction() -> impl Strategy<Value = Coefficient> {
        (small_coefficient(), small_coefficient()).prop_filter_map("nonzero denominator", |(a, b)| {
            if b.is_zero() {
                None
            } else {
                Some(a.checked_div(&b).unwrap())
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_commutes(a in small_fraction(), b in small_fraction()) {
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        }

        #[test]
        fn add_then_subtract(a in small_fraction(), b in small_fraction()) {
            prop_assert_eq!(a.add_ref(&b).sub_ref(&b), a);
        }

        #[test]
        fn inverse(a in small_fraction()) {
            prop_assume!(!a.is_zero());
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        }

        #[test]
        fn distributive(a in small_fraction(), b in small_fraction(), c in small_fraction()) {
            let lhs = a.mul_ref(&b.add_ref(&c));
            let rhs = a.mul_ref(&b).add_ref(&a.mul_ref(&c));
            prop_assert_eq!(lhs.sub_ref(&rhs).to_string(), "0");
        }

        #[test]
        fn normalize_is_idempotent(a in small_coefficient(), b in small_coefficient()) {
            prop_assume!(!b.is_zero());
            let x = a.checked_div(&b).unwrap();
            let y = coeff_normalize(x.numerator().clone(), x.denominator()).unwrap();
            prop_assert_eq!(x.to_string(), y.to_string());
        }

        #[test]
        fn series_of_product(a in small_coefficient(), b in small_coefficient()) {
            let n = 3;
            let sa = coeff_series(&a, n).unwrap();
            let sb = coeff_series(&b, n).unwrap();
            let sab = coeff_series(&a.mul_ref(&b), n).unwrap();
            let prod = sa.mul(&sb, n);
            // a truncated factor only determines the product up to this order
            let valid = (sa.lowest + n).min(sb.lowest + n).min(n);
            for k in sab.lowest.min(prod.lowest)..=valid {
                prop_assert_eq!(sab.coeff(k), prod.coeff(k));
            }
        }
    }

    #[test]
    fn zero_normalizes_to_literal_zero() {
        let c = Coefficient::cosh();
        let s = Coefficient::sinh();
        let x = c.mul_ref(&c).sub_ref(&s.mul_ref(&s)).sub_ref(&Coefficient::one());
        assert_eq!(x.to_string(), "0");
    }
}
