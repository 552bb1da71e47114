//! Digit-routing additive systems.
//!
//! Split the digit positions `0, 1, 2, ...` of base `g` into classes
//! `K_1, ..., K_h` by residue mod `h`. Component `A_i` holds every integer
//! whose nonzero base-`g` digits all sit in `K_i`. Routing each digit of `n`
//! to its class writes `n` as `a_1 + ... + a_h` with `a_i` in `A_i`, so the
//! union of the components is a basis of order `h`. With `g = 2` and
//! `K_i = {k : k = i - 1 mod h}` this is the Raikov–Stöhr thin basis.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Nat;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAdicParams {
    g: u32,
    h: usize,
    /// `class_of[k mod h]` is the component (1-based) owning position `k`.
    class_of: Vec<usize>,
}

impl GAdicParams {
    /// Residue-class assignment `K_i = {k : k = i - 1 mod h}`.
    pub fn raikov_stohr(g: u32, h: usize) -> Result<Self> {
        Self::new(g, h, (1..=h).collect())
    }

    pub fn new(g: u32, h: usize, class_of: Vec<usize>) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidArgument(format!("base g must be at least 2, got {g}")));
        }
        if h == 0 {
            return Err(Error::OrderTooSmall { h, min: 1 });
        }
        if class_of.len() != h {
            return Err(Error::InvalidArgument(format!(
                "class map must cover all {h} residues, got {}",
                class_of.len()
            )));
        }
        if let Some(bad) = class_of.iter().find(|&&c| c == 0 || c > h) {
            return Err(Error::InvalidArgument(format!("component index {bad} outside 1..={h}")));
        }
        Ok(Self { g, h, class_of })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    /// Component owning digit position `k`.
    pub fn component_of(&self, k: usize) -> usize {
        self.class_of[k % self.h]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.h {
            return Err(Error::InvalidArgument(format!("component {i} outside 1..={}", self.h)));
        }
        Ok(())
    }

    /// Base-`g` digits, least significant first. Zero has no digits.
    fn digits(&self, x: &Nat) -> Vec<u32> {
        let base = Nat::from(self.g);
        let mut out = Vec::new();
        let mut rest = x.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&base);
            out.push(r.to_u32().expect("digit below base"));
            rest = q;
        }
        out
    }

    /// True iff every nonzero digit of `x` sits at a position owned by `i`.
    pub fn component_member(&self, i: usize, x: &Nat) -> Result<bool> {
        self.check_index(i)?;
        Ok(self
            .digits(x)
            .iter()
            .enumerate()
            .all(|(k, &d)| d == 0 || self.component_of(k) == i))
    }

    /// Membership in the union of the components.
    pub fn member(&self, x: &Nat) -> bool {
        let mut owner = None;
        for (k, &d) in self.digits(x).iter().enumerate() {
            if d == 0 {
                continue;
            }
            let c = self.component_of(k);
            match owner {
                None => owner = Some(c),
                Some(o) if o != c => return false,
                Some(_) => {}
            }
        }
        true
    }

    /// Routes each digit of `n` to its component; `out[i-1]` lies in `A_i`.
    pub fn decompose(&self, n: &Nat) -> Vec<Nat> {
        let mut parts = vec![Nat::zero(); self.h];
        let mut place = Nat::one();
        for (k, d) in self.digits(n).into_iter().enumerate() {
            if d != 0 {
                parts[self.component_of(k) - 1] += &place * d;
            }
            place *= self.g;
        }
        parts
    }

    /// Ascending elements of `A_i` in `[0, x]`.
    pub fn component_enumerate_up_to(&self, i: usize, x: &Nat) -> Result<Vec<Nat>> {
        self.check_index(i)?;
        let mut places = Vec::new();
        let mut place = Nat::one();
        let mut k = 0usize;
        while place <= *x {
            if self.component_of(k) == i {
                places.push(place.clone());
            }
            place *= self.g;
            k += 1;
        }
        let mut out = Vec::new();
        self.walk(&places, Nat::zero(), x, &mut out);
        Ok(out)
    }

    // Most significant allowed place first and digits ascending, so output
    // comes out sorted.
    fn walk(&self, places: &[Nat], partial: Nat, x: &Nat, out: &mut Vec<Nat>) {
        let Some((top, lower)) = places.split_last() else {
            out.push(partial);
            return;
        };
        let mut value = partial;
        for _ in 0..self.g {
            if value > *x {
                break;
            }
            self.walk(lower, value.clone(), x, out);
            value += top;
        }
    }

    /// Sorted, deduplicated elements of the union in `[0, x]`.
    pub fn enumerate_up_to(&self, x: &Nat) -> Vec<Nat> {
        let mut all = Vec::new();
        for i in 1..=self.h {
            all.extend(self.component_enumerate_up_to(i, x).expect("index in range"));
        }
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Number of elements of `A_i` in `[0, x]`, zero included, by a digit
    /// dynamic program over the digits of `x`.
    pub fn component_count(&self, i: usize, x: &Nat) -> Result<Nat> {
        self.check_index(i)?;
        let digits = self.digits(x);
        // free[k] = g^(number of positions below k owned by i)
        let mut free = Vec::with_capacity(digits.len() + 1);
        free.push(Nat::one());
        for k in 0..digits.len() {
            let next = if self.component_of(k) == i { &free[k] * self.g } else { free[k].clone() };
            free.push(next);
        }
        let mut count = Nat::zero();
        for k in (0..digits.len()).rev() {
            let d = digits[k];
            if self.component_of(k) == i {
                count += &free[k] * d;
            } else if d != 0 {
                // only digit 0 is allowed here, which is already below x
                count += &free[k];
                return Ok(count);
            }
        }
        Ok(count + 1u32)
    }

    /// `A(x)`: elements of the union in `[1, x]`. Distinct components
    /// share only 0.
    pub fn count(&self, x: &Nat) -> Nat {
        (1..=self.h)
            .map(|i| self.component_count(i, x).expect("index in range") - 1u32)
            .sum()
    }
}
