//! Coprime multiples completed by an initial interval.
//!
//! For generators `a'_1, ..., a'_h` with gcd 1 every `n >= C` is a
//! nonnegative combination `sum a'_i v_i`, so `[0, C-1]` together with the
//! multiples `a'_i * N_0` is a basis of order `h`. It is not thin: each run of
//! multiples already has a linear counting function.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{gcd_all, Nat};
use crate::decompose::{Decomposition, Term};
use crate::merge::{Elements, Run};
use crate::{Error, Result};

/// Largest DP table accepted, in entries.
pub const MAX_TABLE: usize = 1 << 28;

const UNREACHABLE: u32 = u32::MAX;

/// Generators, threshold `C` and the reachability table used to build
/// representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusParams {
    aprime: Vec<Nat>,
    small: Vec<usize>,
    threshold: usize,
    /// `pred[n]` is a generator index `i` with `n - a'_i` reachable, or
    /// `UNREACHABLE`. Entry 0 is reachable with no predecessor.
    pred: Vec<u32>,
}

/// Least `C` such that every `n >= C` is a nonnegative combination of
/// `aprime`.
pub fn frobenius_c(aprime: &[Nat]) -> Result<Nat> {
    Ok(Nat::from(FrobeniusParams::new(aprime.to_vec())?.threshold))
}

impl FrobeniusParams {
    pub fn new(aprime: Vec<Nat>) -> Result<Self> {
        if aprime.is_empty() {
            return Err(Error::InvalidArgument("need at least one generator".into()));
        }
        if aprime.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("generators must be positive".into()));
        }
        let g = gcd_all(&aprime);
        if g != Nat::from(1u32) {
            return Err(Error::InvalidArgument(format!(
                "generators have gcd {g}, so no threshold C exists"
            )));
        }
        let small: Vec<usize> = aprime
            .iter()
            .map(|a| a.to_usize())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidArgument("generator too large".into()))?;
        let lo = *small.iter().min().expect("nonempty");
        let hi = *small.iter().max().expect("nonempty");
        // Schur: the threshold is at most (lo - 1)(hi - 1), so lo * hi entries
        // hold the last gap and a full run of lo representable values after it.
        let top = lo
            .checked_mul(hi)
            .filter(|&m| m < MAX_TABLE)
            .ok_or_else(|| Error::InvalidArgument(format!("table of size {lo}*{hi} exceeds the limit")))?;

        let mut pred = vec![UNREACHABLE; top + 1];
        pred[0] = 0;
        let mut threshold = 0;
        for n in 1..=top {
            if let Some(i) = small.iter().position(|&a| a <= n && pred[n - a] != UNREACHABLE) {
                pred[n] = i as u32;
            } else {
                threshold = n + 1;
            }
        }
        debug_assert!(threshold + lo <= top + 1);
        Ok(Self { aprime, small, threshold, pred })
    }

    pub fn aprime(&self) -> &[Nat] {
        &self.aprime
    }

    pub fn h(&self) -> usize {
        self.aprime.len()
    }

    /// The representability threshold `C`.
    pub fn threshold(&self) -> Nat {
        Nat::from(self.threshold)
    }

    /// True iff `n` is a nonnegative combination of the generators.
    pub fn representable(&self, n: &Nat) -> bool {
        match n.to_usize() {
            Some(m) if m < self.pred.len() => self.pred[m] != UNREACHABLE,
            _ => true,
        }
    }

    /// Coefficients `v` with `sum a'_i v_i == n`, or `None` below `C` when no
    /// combination exists.
    pub fn coefficients(&self, n: &Nat) -> Option<Vec<Nat>> {
        let mut v = vec![Nat::zero(); self.small.len()];
        let (mut m, extra) = match n.to_usize() {
            Some(m) if m < self.pred.len() => (m, None),
            _ => {
                // Shift n down into [C, C + min) with the smallest generator.
                let (idx, &lo) = self
                    .small
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &a)| a)
                    .expect("nonempty");
                let c = Nat::from(self.threshold);
                let over = n - &c;
                let (q, r) = over.div_rem(&Nat::from(lo));
                let m = self.threshold + r.to_usize().expect("remainder below generator");
                (m, Some((idx, q)))
            }
        };
        if self.pred[m] == UNREACHABLE {
            return None;
        }
        while m > 0 {
            let i = self.pred[m] as usize;
            v[i] += 1u32;
            m -= self.small[i];
        }
        if let Some((idx, q)) = extra {
            v[idx] += q;
        }
        Some(v)
    }

    /// Exactly `h` basis elements summing to `n`.
    pub fn decompose(&self, n: &Nat) -> Decomposition {
        if *n < self.threshold() {
            return Decomposition::padded(n.clone(), self.h());
        }
        let v = self.coefficients(n).expect("every n >= C is representable");
        let terms = self
            .aprime
            .iter()
            .zip(v)
            .map(|(a, vi)| {
                if vi.is_zero() {
                    Term::zero()
                } else {
                    Term { element: a * &vi, factor: Some((a.clone(), vi)) }
                }
            })
            .collect();
        Decomposition { n: n.clone(), terms }
    }

    pub fn member(&self, x: &Nat) -> bool {
        *x < self.threshold() || self.aprime.iter().any(|a| (x % a).is_zero())
    }

    pub fn elements_up_to(&self, x: &Nat) -> Elements {
        let mut runs = Vec::with_capacity(self.h() + 1);
        let interval_last = if self.threshold == 0 {
            Nat::zero()
        } else {
            core::cmp::min(x.clone(), Nat::from(self.threshold - 1))
        };
        runs.push(Run { next: Nat::zero(), step: Nat::from(1u32), last: interval_last });
        for a in &self.aprime {
            runs.push(Run { next: a.clone(), step: a.clone(), last: (x / a) * a });
        }
        Elements::new(runs)
    }

    pub fn enumerate_up_to(&self, x: &Nat) -> Vec<Nat> {
        self.elements_up_to(x).collect()
    }

    /// `A(x)`: multiples in `[1, x]` by inclusion–exclusion over generator
    /// subsets, plus the non-multiples below `C`.
    pub fn count(&self, x: &Nat) -> Nat {
        let mut distinct: Vec<Nat> = self.aprime.clone();
        distinct.sort();
        distinct.dedup();
        let (plus, minus) = inclusion_exclusion(&distinct, x);
        let multiples = plus - minus;
        let cap = match x.to_usize() {
            Some(m) => core::cmp::min(m, self.threshold.saturating_sub(1)),
            None => self.threshold.saturating_sub(1),
        };
        let extra = (1..=cap)
            .filter(|&m| self.small.iter().all(|&a| m % a != 0))
            .count();
        multiples + extra
    }
}

/// Sums of `floor(x / lcm(S))` over nonempty subsets, split by parity of
/// `|S|`. Subsets whose lcm already exceeds `x` are pruned with all their
/// supersets.
fn inclusion_exclusion(gens: &[Nat], x: &Nat) -> (Nat, Nat) {
    fn go(gens: &[Nat], x: &Nat, lcm: &Nat, negative: bool, acc: &mut (Nat, Nat)) {
        for (i, a) in gens.iter().enumerate() {
            let next = lcm.lcm(a);
            if next > *x {
                continue;
            }
            let term = x / &next;
            if negative {
                acc.1 += term;
            } else {
                acc.0 += term;
            }
            go(&gens[i + 1..], x, &next, !negative, acc);
        }
    }
    let mut acc = (Nat::zero(), Nat::zero());
    go(gens, x, &Nat::from(1u32), false, &mut acc);
    acc
}
