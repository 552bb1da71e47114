//! Exact integer primitives: extended gcd, multi-term Bézout certificates,
//! radicals, coprimality and binomial coefficients.
//!
//! Every magnitude in the crate is an unbounded integer. `S_k` grows like
//! `(kP)^h` and the stratum thresholds like `S_{k1}^t`, so fixed-width
//! arithmetic overflows quickly.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Unbounded nonnegative integer.
pub type Nat = BigUint;
/// Unbounded signed integer.
pub type Int = BigInt;

/// Gcd of a sequence together with coefficients `u` such that
/// `sum(a_i * u_i) == g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCert {
    pub g: Nat,
    pub coeffs: Vec<Int>,
}

impl BezoutCert {
    /// Checks the certificate identity against `a`.
    pub fn holds_for(&self, a: &[Nat]) -> bool {
        if a.len() != self.coeffs.len() {
            return false;
        }
        let sum: Int = a
            .iter()
            .zip(&self.coeffs)
            .map(|(ai, ui)| to_int(ai) * ui)
            .sum();
        sum == to_int(&self.g)
    }
}

#[inline]
pub fn to_int(n: &Nat) -> Int {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// Converts a signed value known to be nonnegative.
pub fn to_nat(n: &Int) -> Option<Nat> {
    n.to_biguint()
}

/// Extended Euclid: returns `(g, u, v)` with `a*u + b*v == g == gcd(a, b)`.
pub fn ext_gcd(a: &Nat, b: &Nat) -> Result<(Nat, Int, Int)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("ext_gcd(0, 0) is undefined".into()));
    }
    let (mut old_r, mut r) = (to_int(a), to_int(b));
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());

    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, next_t);
    }

    // Remainders stay nonnegative for nonnegative inputs.
    let g = old_r.to_biguint().expect("gcd of naturals is nonnegative");
    Ok((g, old_s, old_t))
}

/// Bézout certificate for a whole sequence, built by folding [`ext_gcd`]
/// left to right and rescaling the coefficients collected so far.
pub fn bezout_multi(a: &[Nat]) -> Result<BezoutCert> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument(
            "bezout_multi needs at least one positive entry".into(),
        ));
    }
    let mut g = Nat::zero();
    let mut coeffs: Vec<Int> = Vec::with_capacity(a.len());
    for ai in a {
        if g.is_zero() && ai.is_zero() {
            coeffs.push(Int::zero());
            continue;
        }
        let (next, x, y) = ext_gcd(&g, ai)?;
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = next;
    }
    Ok(BezoutCert { g, coeffs })
}

pub fn gcd_all(a: &[Nat]) -> Nat {
    a.iter().fold(Nat::zero(), |acc, x| acc.gcd(x))
}

/// Distinct prime divisors of `m` in increasing order, by trial division.
pub fn prime_factors(m: &Nat) -> Result<Vec<Nat>> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("prime_factors(0) is undefined".into()));
    }
    let mut rest = m.clone();
    let mut primes = Vec::new();
    let mut d = Nat::from(2u32);
    while &d * &d <= rest {
        if (&rest % &d).is_zero() {
            while (&rest % &d).is_zero() {
                rest /= &d;
            }
            primes.push(d.clone());
        }
        d += 1u32;
    }
    if !rest.is_one() {
        primes.push(rest);
    }
    Ok(primes)
}

/// Product of the distinct primes dividing `m`; `radical(1) == 1`.
pub fn radical(m: &Nat) -> Result<Nat> {
    Ok(prime_factors(m)?.iter().product())
}

/// True iff every pair of entries is coprime. Zero entries are rejected.
pub fn pairwise_coprime(a: &[Nat]) -> Result<bool> {
    if a.iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument(
            "pairwise_coprime expects positive integers".into(),
        ));
    }
    for (i, x) in a.iter().enumerate() {
        for y in &a[i + 1..] {
            if !x.gcd(y).is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binom(n: &Nat, k: &Nat) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = core::cmp::min(k.clone(), n - k);
    let mut acc = Nat::one();
    let mut i = Nat::one();
    // acc == C(n - k + i - 1, i - 1) at loop entry, so each division is exact.
    while i <= k {
        acc = acc * (n - &k + &i) / &i;
        i += 1u32;
    }
    acc
}
