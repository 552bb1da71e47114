//! Thin additive bases of finite order.
//!
//! A set `A` of nonnegative integers is a basis of order `h` when every
//! nonnegative integer is a sum of exactly `h` (not necessarily distinct)
//! elements of `A`. This crate builds three families of such bases and the
//! machinery to check them by brute force:
//!
//! * [`shatrovskii`]: thin bases built from the cofactors of products of
//!   arithmetic progressions `kP + r_i`, decomposed constructively by
//!   [`decompose`].
//! * [`gadic`]: digit-routing additive systems, including the Raikov–Stöhr
//!   binary thin basis.
//! * [`frobenius`]: coprime multiples completed by an initial interval.
//!
//! [`basis::BasisHandle`] puts all of them behind one membership /
//! enumeration / counting interface, and [`verify`] runs sumset coverage and
//! counting-function checks against any handle.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod basis;
pub mod bitset;
pub mod decompose;
mod error;
pub mod frobenius;
pub mod gadic;
pub mod merge;
pub mod shatrovskii;
pub mod verify;

pub use arith::{BezoutCert, Int, Nat};
pub use basis::BasisHandle;
pub use decompose::{Decomposition, Term};
pub use error::Error;
pub use frobenius::FrobeniusParams;
pub use gadic::GAdicParams;
pub use shatrovskii::{EllSeq, SchemeRow, ShatBasis, ShatParams};
pub use verify::{CoverageReport, ThinnessProfile};

pub type Result<T, E = Error> = core::result::Result<T, E>;
