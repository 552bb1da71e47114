//! One interface over every construction: membership, sorted enumeration and
//! the counting function `A(x)`, which counts elements in `[1, x]` and so
//! never includes 0.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::Nat;
use crate::decompose::{theorem_decompose, Decomposition, Term};
use crate::frobenius::FrobeniusParams;
use crate::gadic::GAdicParams;
use crate::shatrovskii::{ShatBasis, ShatParams};

#[derive(Debug, Clone)]
pub enum BasisHandle {
    Shatrovskii(ShatBasis),
    GAdic(GAdicParams),
    Frobenius(FrobeniusParams),
    /// A finite set, kept sorted and deduplicated.
    Explicit(Vec<Nat>),
}

impl BasisHandle {
    pub fn shatrovskii(params: ShatParams) -> Self {
        Self::Shatrovskii(ShatBasis::new(params))
    }

    pub fn explicit(elements: impl IntoIterator<Item = Nat>) -> Self {
        let mut v: Vec<Nat> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::Explicit(v)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Shatrovskii(_) => "shatrovskii",
            Self::GAdic(_) => "gadic",
            Self::Frobenius(_) => "frobenius",
            Self::Explicit(_) => "explicit",
        }
    }

    /// Order the construction is built for, when it has one.
    pub fn order(&self) -> Option<usize> {
        match self {
            Self::Shatrovskii(b) => Some(b.h()),
            Self::GAdic(p) => Some(p.h()),
            Self::Frobenius(p) => Some(p.h()),
            Self::Explicit(_) => None,
        }
    }

    pub fn member(&self, x: &Nat) -> bool {
        match self {
            Self::Shatrovskii(b) => b.member(x),
            Self::GAdic(p) => p.member(x),
            Self::Frobenius(p) => p.member(x),
            Self::Explicit(v) => v.binary_search(x).is_ok(),
        }
    }

    pub fn enumerate_up_to(&self, x: &Nat) -> Vec<Nat> {
        match self {
            Self::Shatrovskii(b) => b.enumerate_up_to(x),
            Self::GAdic(p) => p.enumerate_up_to(x),
            Self::Frobenius(p) => p.enumerate_up_to(x),
            Self::Explicit(v) => v.iter().take_while(|e| *e <= x).cloned().collect(),
        }
    }

    pub fn count(&self, x: &Nat) -> Nat {
        match self {
            Self::Shatrovskii(b) => b.count(x),
            Self::GAdic(p) => p.count(x),
            Self::Frobenius(p) => p.count(x),
            Self::Explicit(v) => {
                Nat::from(v.iter().take_while(|e| *e <= x).filter(|e| !e.is_zero()).count())
            }
        }
    }

    /// Constructive representation of `n` as `order()` elements. Finite
    /// explicit sets have no decomposer.
    pub fn decompose(&self, n: &Nat) -> Option<Decomposition> {
        match self {
            Self::Shatrovskii(b) => Some(theorem_decompose(b, n)),
            Self::GAdic(p) => Some(Decomposition {
                n: n.clone(),
                terms: p.decompose(n).into_iter().map(Term::plain).collect(),
            }),
            Self::Frobenius(p) => Some(p.decompose(n)),
            Self::Explicit(_) => None,
        }
    }
}
