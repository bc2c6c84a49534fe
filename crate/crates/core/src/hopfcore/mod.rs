//! Generic presented Hopf algebras: normal ordering by rewriting, tensor
//! arithmetic, and Δ, S, ε extended from generators.
//!
//! Generators are totally ordered by (class, index); a word is normal when it
//! is nondecreasing and contains no adjacent inverse pair. Every out-of-order
//! adjacent pair `h g` has a replacement (by default `g h`), and normal forms
//! are computed by memoized right multiplication.

mod axioms;
mod element;
mod presentation;

pub use axioms::{
    check_elements, check_hopf_axioms, check_rule_compatibility, check_rule_compatibility_by, confluence_probe, random_normal_word,
    random_order_normal_form, random_raw_word, sample_elements,
};
pub(crate) use axioms::{element_outcome, scalar_outcome, tensor_outcome, Outcome, Tally};
pub use element::{AlgebraElement, Gen, TensorElement, Word};
pub use presentation::{render_sum, GeneratorSpec, HopfPresentation, PresentationBuilder, ResidualTest};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("invalid presentation: {0}")]
    Build(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("rewriting did not terminate; rule chain: {}", .0.join(" <- "))]
    Nontermination(Vec<String>),
}
