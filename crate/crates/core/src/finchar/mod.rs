//! Finite groups and their representations over cyclotomic fields.
//!
//! Groups are stored as multiplication tables and shared behind `Arc`;
//! representations store the image of every element, verified to be a
//! homomorphism when constructed. Characters are class functions with exact
//! cyclotomic values, and equivalence of representations is decided by
//! character equality.

mod clifford;
mod cocycle;
mod cyclotomic;
mod group;
mod heisenberg;
mod matrix;
mod rep;
mod twisted;
mod character;

pub use character::{inner_product, kth_power_equal, twist_search_characters, ClassFunction, LinearCharacter};
pub use clifford::{
    align_components, clifford_decompose, clifford_decompose_character, fixed_sets, fixed_sets_agree,
    induced_twist_analysis, invariant_character_check, CliffordDecomposition, ComponentAlignment,
    InducedTwistAnalysis, InvarianceReport, IsotypicComponent, PermutationAction,
};
pub use cocycle::{commutant_dimension, twist_cocycle, TwistCocycle};
pub use cyclotomic::Cyclotomic;
pub use group::{permutation_sign, FiniteGroup, Group, Quotient, Subgroup, GROUP_ORDER_CAP};
pub use heisenberg::Heisenberg;
pub use matrix::CycMatrix;
pub use rep::{induce, twist_search, MatrixRep};
pub use twisted::{
    asai_character_formula, conjugation_automorphisms, pre_asai, random_lift_system, Automorphism,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FincharError {
    #[error("objects live on different groups")]
    GroupMismatch,
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("expected a rational number, found {0}")]
    NonRationalResult(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("elements do not form a subgroup")]
    NotASubgroup,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("representations differ on the subgroup at {0}")]
    NotEqualOnSubgroup(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("group of order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("character table incomplete: sum of squared degrees {found} < {order}")]
    CharacterTableIncomplete { found: u64, order: usize },
    #[error("restriction is not multiplicity free")]
    MultiplicityNotOne,
    #[error("representation is not irreducible")]
    NotIrreducible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl FincharError {
    pub fn name(&self) -> &'static str {
        match self {
            FincharError::GroupMismatch => "GroupMismatch",
            FincharError::DimMismatch { .. } => "DimMismatch",
            FincharError::NonRationalResult(_) => "NonRationalResult",
            FincharError::NotNormal => "NotNormal",
            FincharError::NotASubgroup => "NotASubgroup",
            FincharError::NotAutomorphism(_) => "NotAutomorphism",
            FincharError::NotEqualOnSubgroup(_) => "NotEqualOnSubgroup",
            FincharError::BadParameters(_) => "BadParameters",
            FincharError::GroupTooLarge { .. } => "GroupTooLarge",
            FincharError::InvalidGroup(_) => "InvalidGroup",
            FincharError::NotAHomomorphism(_) => "NotAHomomorphism",
            FincharError::CharacterTableIncomplete { .. } => "CharacterTableIncomplete",
            FincharError::MultiplicityNotOne => "MultiplicityNotOne",
            FincharError::NotIrreducible => "NotIrreducible",
            FincharError::Parse(_) => "Parse",
            FincharError::Inconsistent(_) => "Inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, FincharError>;
