//! Exact analysis of square matrices in the P / P0 / P0+ / Q hierarchy.
//!
//! All sign decisions are made over exact rationals. The crate provides
//!
//! - dense rational matrices, minors and compound matrices ([`matrix`], [`compound`]);
//! - class predicates with witnesses ([`classes`]);
//! - the symbolic invariants `Tr(((DA)^2)^(j))` in the scaling variables,
//!   positivity certificates and sampling refutation ([`scaling`], [`certificate`]);
//! - an end-to-end check of the implication "every `(DA)^2` is Q implies
//!   `A^2` is P0+" together with a randomized search for violations ([`refute`]).

pub mod certificate;
pub mod classes;
pub mod compound;
pub mod error;
pub mod guard;
pub mod index_set;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod refute;
pub mod reproduce;
pub mod scaling;

pub use certificate::{certify_positive_on_orthant, CertVerdict, Certificate, Evidence};
pub use classes::{classify, is_anti_sign_symmetric, principal_minor_sums, ClassReport, Verdict};
pub use compound::{compound, CompoundMatrix};
pub use error::{Error, Result};
pub use guard::Guards;
pub use index_set::IndexSet;
pub use matrix::RationalMatrix;
pub use poly::SparsePolynomial;
pub use rational::Rational;
pub use refute::{hunt, verify_refutation, Claim, HuntConfig, RefutationReport, RefutationVerdict};
pub use scaling::{
    cauchy_binet_terms, d_epsilon, sample_refute, symbolic_q_invariants, DiagonalScaling, SamplingConfig,
};
