use alloc::string::String;

use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("order h must be at least {min}, got {h}")]
    OrderTooSmall { h: usize, min: usize },

    #[error("expected {expected} residues r, got {got}")]
    ResidueCount { expected: usize, got: usize },

    #[error("r must consist of positive integers")]
    NonPositiveResidue,

    #[error("r not strictly increasing")]
    NotIncreasing,

    #[error("r not pairwise coprime")]
    NotPairwiseCoprime,

    #[error("P must be a positive integer with P >= r_h - r_1 = {span}, got P = {p}")]
    PTooSmall { p: Nat, span: Nat },

    #[error("prime {prime} divides a difference r_j - r_i but does not divide P = {p}")]
    PMissingPrime { prime: Nat, p: Nat },

    #[error("k1 = {k1} is below k0(h) = {k0}")]
    K1BelowK0 { k1: Nat, k0: Nat },

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("coverage over [0, {n}] needs {required} bytes, cap is {cap} bytes")]
    ResourceCap { n: u64, required: u64, cap: u64 },
}
