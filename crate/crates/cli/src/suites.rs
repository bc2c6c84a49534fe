//! Suite registry: name, runner and (where one exists) the negative control.

use kappa_core::duality::{duality_consistency_suite, Duality, Raising};
use kappa_core::indrep::{closure_suite, momentum_shell_suite, InducedRep, OrbitalSign, RepConvention, Spin};
use kappa_core::kalgebra::{
    build_kalgebra, build_kalgebra_with, classical_limit_suite, jacobi_suite, kalgebra_hopf_verify, BoostAntipode,
    KAlgebraOptions, MomentumSquare,
};
use kappa_core::kgroup::{kgroup_verify, kgroup_verify_corrupt};
use kappa_core::kminkowski::{
    antirep_suite, extract_compare_suite, kg_suite, leibniz_suite, star_suite, XLowering,
};
use kappa_core::report::CheckRecord;

pub const SUITES: [(&str, &str); 12] = [
    ("group-hopf", "Hopf axioms and rule compatibility of the kappa-Poincare group"),
    ("algebra-jacobi", "Jacobi identity on all 165 generator triples of the algebra"),
    ("algebra-hopf", "Hopf axioms and the 55 coproduct-homomorphism pairs of the algebra"),
    ("duality", "two-route pairing, relation kernels, antipode and counit compatibility"),
    ("rep-closure", "commutation relations of the induced representation"),
    ("momentum-shell", "dispersion, deformation map and its classical limit"),
    ("classical-limit", "order k^0 structure constants of the algebra"),
    ("mink-star", "star product on kappa-Minkowski symbols and plane waves"),
    ("antirep", "hat generators form an antirepresentation"),
    ("leibniz", "which coproduct ordering gives the product rule"),
    ("kg", "Klein-Gordon factorization and the on-shell equation"),
    ("extract-compare", "momentum-space form of the hat generators"),
];

/// Whether `name` has a negative control behind `--corrupt`.
pub fn has_control(name: &str) -> bool {
    matches!(name, "group-hopf" | "algebra-jacobi" | "algebra-hopf" | "duality" | "rep-closure" | "antirep")
}

#[derive(Clone, Debug)]
pub struct Params {
    /// `None` runs all three spins.
    pub spin: Option<Spin>,
    pub max_degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub order: u32,
    pub corrupt: bool,
}

pub fn run_suite(name: &str, p: &Params) -> Vec<CheckRecord> {
    let deg = p.max_degree as usize;
    match name {
        "group-hopf" if p.corrupt => kgroup_verify_corrupt(deg, p.samples, p.seed),
        "group-hopf" => kgroup_verify(deg, p.samples, p.seed),
        "algebra-jacobi" => {
            let opts = KAlgebraOptions {
                momentum_square: if p.corrupt { MomentumSquare::Euclidean } else { MomentumSquare::Minkowski },
                ..KAlgebraOptions::default()
            };
            jacobi_suite(&build_kalgebra_with(opts))
        }
        "algebra-hopf" => {
            let opts = KAlgebraOptions {
                boost_antipode: if p.corrupt { BoostAntipode::LeftInverse } else { BoostAntipode::RightInverse },
                ..KAlgebraOptions::default()
            };
            kalgebra_hopf_verify(&build_kalgebra_with(opts), deg, p.samples, p.seed)
        }
        "duality" => {
            let d = Duality::with_raising(if p.corrupt { Raising::First } else { Raising::Second });
            duality_consistency_suite(&d, deg, p.samples, p.seed)
        }
        "rep-closure" => {
            let conv = RepConvention {
                orbital: if p.corrupt { OrbitalSign::Flipped } else { OrbitalSign::Standard },
                ..RepConvention::default()
            };
            let spins = match p.spin {
                Some(s) => vec![s],
                None => vec![Spin::Zero, Spin::Half, Spin::One],
            };
            spins.into_iter().flat_map(|s| closure_suite(&InducedRep::with_convention(s, conv))).collect()
        }
        "momentum-shell" => momentum_shell_suite(p.order as i32),
        "classical-limit" => classical_limit_suite(&build_kalgebra(), p.order as usize),
        "mink-star" => star_suite(&build_kalgebra(), p.max_degree.max(4), p.samples, p.seed),
        "antirep" => {
            let l = if p.corrupt { XLowering::Plain } else { XLowering::Metric };
            antirep_suite(&build_kalgebra(), p.max_degree, l)
        }
        "leibniz" => leibniz_suite(&build_kalgebra(), p.samples, p.seed),
        "kg" => kg_suite(p.order as i32),
        "extract-compare" => extract_compare_suite(&build_kalgebra()),
        other => unreachable!("unknown suite {other} passed validation"),
    }
}
