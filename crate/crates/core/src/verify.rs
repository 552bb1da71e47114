//! Brute-force checks on bases: h-fold sumset coverage of `[0, N]`, the
//! counting lower bound `x + 1 <= C(A(x) + h, h)`, the Shatrovskiĭ thinness
//! bound, and counting-function profiles.
//!
//! All pass/fail decisions use exact integer comparisons. Ratios
//! `A(x) / x^(1/h)` are kept as the rational `A(x)^h / x` and rendered with six
//! truncated decimals for display only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{binom, Nat};
use crate::basis::BasisHandle;
use crate::bitset::{sumset_words, words_for, BitSet};
use crate::shatrovskii::ShatBasis;
use crate::{Error, Result};

/// Default cap on coverage bit-array memory: 1 GiB.
pub const DEFAULT_MEM_CAP_BYTES: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub n: u64,
    pub h: usize,
    pub covered: bool,
    pub first_gap: Option<u64>,
    /// `|A ∩ [0, N]|`, zero included when present.
    pub elements_used: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageOptions {
    pub mem_cap_bytes: u64,
    /// Output words per chunk handed to the runner.
    pub chunk_words: usize,
}

impl Default for CoverageOptions {
    fn default() -> Self {
        Self { mem_cap_bytes: DEFAULT_MEM_CAP_BYTES, chunk_words: 1 << 14 }
    }
}

/// Bytes held by the three bit arrays of a run over `[0, n]`.
pub fn coverage_bytes(n: u64) -> u64 {
    let words = (n / 64).saturating_add(1);
    words.saturating_mul(8).saturating_mul(3)
}

/// Evaluates disjoint output-word ranges of one sumset step. Chunks never
/// share output words, so results are merged by concatenation.
pub trait ChunkRunner {
    fn run(&self, chunks: &[Range<usize>], job: &(dyn Fn(Range<usize>) -> Vec<u64> + Sync)) -> Vec<Vec<u64>>;
}

/// Runs every chunk on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ChunkRunner for Sequential {
    fn run(&self, chunks: &[Range<usize>], job: &(dyn Fn(Range<usize>) -> Vec<u64> + Sync)) -> Vec<Vec<u64>> {
        chunks.iter().cloned().map(job).collect()
    }
}

/// Splits `0..words` into consecutive ranges of at most `size` words.
pub fn chunk_ranges(words: usize, size: usize) -> Vec<Range<usize>> {
    let size = size.max(1);
    (0..words).step_by(size).map(|s| s..(s + size).min(words)).collect()
}

/// h-fold sumset of a sorted element list, truncated to `[0, n]`.
///
/// The reachable set starts as the elements themselves and is convolved
/// `h - 1` times with them by shifted ORs.
pub fn h_fold_sumset(elements: &[usize], h: usize, n: usize, runner: &dyn ChunkRunner, chunk_words: usize) -> BitSet {
    let len = n + 1;
    if h == 0 {
        return BitSet::from_indices(len, [0]);
    }
    let mut reach = BitSet::from_indices(len, elements.iter().copied());
    let chunks = chunk_ranges(words_for(len), chunk_words);
    for _ in 1..h {
        let current = &reach;
        let job = |r: Range<usize>| sumset_words(current, elements, r);
        let parts = runner.run(&chunks, &job);
        let words: Vec<u64> = parts.into_iter().flatten().collect();
        reach = BitSet::from_words(len, words);
    }
    reach
}

pub fn coverage_check(basis: &BasisHandle, h: usize, n: u64) -> Result<CoverageReport> {
    coverage_check_with(basis, h, n, &CoverageOptions::default(), &Sequential)
}

/// Checks that every integer in `[0, N]` is a sum of exactly `h` elements of
/// the basis. Summands of `m <= N` never exceed `N`, so the truncated
/// problem is exact.
pub fn coverage_check_with(
    basis: &BasisHandle,
    h: usize,
    n: u64,
    opts: &CoverageOptions,
    runner: &dyn ChunkRunner,
) -> Result<CoverageReport> {
    let required = coverage_bytes(n);
    if required > opts.mem_cap_bytes {
        return Err(Error::ResourceCap { n, required, cap: opts.mem_cap_bytes });
    }
    let limit = usize::try_from(n).map_err(|_| Error::ResourceCap { n, required, cap: opts.mem_cap_bytes })?;
    let elements: Vec<usize> = basis
        .enumerate_up_to(&Nat::from(n))
        .iter()
        .map(|e| e.to_usize().expect("element below N"))
        .collect();
    let reach = h_fold_sumset(&elements, h, limit, runner, opts.chunk_words);
    let first_gap = reach.first_zero().map(|g| g as u64);
    Ok(CoverageReport {
        n,
        h,
        covered: first_gap.is_none(),
        first_gap,
        elements_used: elements.len() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub n: u64,
    pub h: usize,
    pub holds: bool,
    pub first_violation: Option<u64>,
}

/// Checks `x + 1 <= C(A(x) + h, h)` for every `x` in `[0, N]`.
pub fn counting_lower_bound_check(basis: &BasisHandle, h: usize, n: u64) -> LowerBoundReport {
    let elements = basis.enumerate_up_to(&Nat::from(n));
    let mut next = elements.iter().filter(|e| !e.is_zero()).peekable();
    let hh = Nat::from(h);
    let mut count = Nat::zero();
    let mut bound = binom(&hh, &hh);
    for x in 0..=n {
        let xn = Nat::from(x);
        let mut moved = false;
        while next.peek().is_some_and(|e| **e <= xn) {
            next.next();
            count += 1u32;
            moved = true;
        }
        if moved {
            bound = binom(&(&count + &hh), &hh);
        }
        if xn + 1u32 > bound {
            return LowerBoundReport { n, h, holds: false, first_violation: Some(x) };
        }
    }
    LowerBoundReport { n, h, holds: true, first_violation: None }
}

/// `floor(a / x^(1/h))` with six truncated decimals, computed exactly as the
/// largest `q` with `q^h * x <= (10^6 a)^h`. `None` when `x == 0`.
pub fn ratio_decimal(a: &Nat, x: &Nat, h: usize) -> Option<String> {
    if x.is_zero() || h == 0 {
        return None;
    }
    let e = u32::try_from(h).ok()?;
    let scaled = a * 1_000_000u32;
    let target = scaled.pow(e);
    // q <= scaled since x >= 1
    let (mut lo, mut hi) = (Nat::zero(), &scaled + 1u32);
    while &hi - &lo > Nat::one() {
        let mid = (&lo + &hi) >> 1u32;
        if mid.pow(e) * x <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let micros = Nat::from(1_000_000u32);
    let whole = &lo / &micros;
    let frac = (&lo % &micros).to_u32().expect("below 10^6");
    Some(format!("{whole}.{frac:06}"))
}

/// Exact `A(x)^h / x` as a numerator/denominator pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    pub num: Nat,
    pub den: Nat,
}

impl Ratio {
    pub fn new(count: &Nat, x: &Nat, h: usize) -> Self {
        Self { num: num_traits::pow(count.clone(), h), den: x.clone() }
    }

    /// `self > other`, cross-multiplied. A zero denominator counts as +inf.
    pub fn exceeds(&self, other: &Ratio) -> bool {
        match (self.den.is_zero(), other.den.is_zero()) {
            (true, _) => !other.den.is_zero(),
            (false, true) => false,
            _ => &self.num * &other.den > &other.num * &self.den,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub x: Nat,
    pub count: Nat,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatBoundReport {
    /// `24 h (h-1) S_{k1}`.
    pub constant: Nat,
    pub rows: Vec<BoundRow>,
    pub all_hold: bool,
    /// Largest `A(x) / x^(1/h)` over the sampled `x >= 1`.
    pub max_ratio: Option<String>,
}

/// Checks `A(x)^h < (24 h (h-1) S_{k1})^h * x` at each sampled `x`. At `x = 0`
/// the count is 0 and the row holds vacuously.
pub fn shat_bound_check(basis: &ShatBasis, xs: &[Nat]) -> ShatBoundReport {
    let params = basis.params();
    let h = params.h();
    let constant = params.product(params.k1()) * (24 * h * (h - 1));
    let c_pow = num_traits::pow(constant.clone(), h);
    let mut rows = Vec::with_capacity(xs.len());
    let mut best: Option<(Ratio, &Nat, Nat)> = None;
    for x in xs {
        let count = basis.count(x);
        let holds = x.is_zero() || num_traits::pow(count.clone(), h) < &c_pow * x;
        if !x.is_zero() {
            let r = Ratio::new(&count, x, h);
            if best.as_ref().is_none_or(|(b, _, _)| r.exceeds(b)) {
                best = Some((r, x, count.clone()));
            }
        }
        rows.push(BoundRow { x: x.clone(), count, holds });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    let max_ratio = best.and_then(|(_, x, c)| ratio_decimal(&c, x, h));
    ShatBoundReport { constant, rows, all_hold, max_ratio }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub x: Nat,
    pub count: Nat,
    pub ratio: Ratio,
    /// `A(x) / x^(1/h)`, six truncated decimals; `None` at `x = 0`.
    pub ratio_decimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinnessProfile {
    pub h: usize,
    pub rows: Vec<ProfileRow>,
}

impl ThinnessProfile {
    /// Row with the largest ratio among `x >= 1`.
    pub fn max_row(&self) -> Option<&ProfileRow> {
        self.rows
            .iter()
            .filter(|r| !r.x.is_zero())
            .fold(None, |best: Option<&ProfileRow>, r| match best {
                Some(b) if !r.ratio.exceeds(&b.ratio) => Some(b),
                _ => Some(r),
            })
    }

    pub fn counts_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].x > w[1].x || w[0].count <= w[1].count)
    }

    /// True iff `A(x)^h <= c^h * x` on every row.
    pub fn bounded_by(&self, c: &Nat) -> bool {
        let c_pow = num_traits::pow(c.clone(), self.h);
        self.rows.iter().all(|r| r.ratio.num <= &c_pow * &r.ratio.den)
    }

    /// The largest ratio over the rows after `split` does not exceed the
    /// largest ratio over the rows up to `split`: the ratio stops growing
    /// once the schedule is past its warm-up.
    pub fn tail_within_head(&self, split: usize) -> bool {
        let (head, tail) = self.rows.split_at(split.min(self.rows.len()));
        let head = ThinnessProfile { h: self.h, rows: head.to_vec() };
        let Some(head_max) = head.max_row() else { return tail.is_empty() };
        tail.iter().all(|r| !r.ratio.exceeds(&head_max.ratio))
    }
}

impl ThinnessProfile {
    /// Along rows `stride` apart, the increments of `A(x) / x^(1/h)` never
    /// grow. Needs `x_{j+stride} = lambda^h x_j` for an integer `lambda`;
    /// then the condition is `A_{j+1} + lambda^2 A_{j-1} <= 2 lambda A_j`,
    /// checked exactly. Returns `false` when the schedule has no such
    /// `lambda`.
    pub fn growth_decelerates(&self, stride: usize) -> bool {
        let stride = stride.max(1);
        let e = match u32::try_from(self.h) {
            Ok(e) if e > 0 => e,
            _ => return false,
        };
        for j in stride..self.rows.len().saturating_sub(stride) {
            let (prev, cur, next) = (&self.rows[j - stride], &self.rows[j], &self.rows[j + stride]);
            let Some(lambda) = exact_ratio_root(&prev.x, &cur.x, e) else { return false };
            if exact_ratio_root(&cur.x, &next.x, e).as_ref() != Some(&lambda) {
                return false;
            }
            let lhs = &next.count + &lambda * &lambda * &prev.count;
            let rhs = &lambda * 2u32 * &cur.count;
            if lhs > rhs {
                return false;
            }
        }
        true
    }
}

/// Integer `lambda` with `lambda^e * small == big`, if any.
fn exact_ratio_root(small: &Nat, big: &Nat, e: u32) -> Option<Nat> {
    if small.is_zero() || !(big % small).is_zero() {
        return None;
    }
    let q = big / small;
    let root = q.nth_root(e);
    (root.pow(e) == q).then_some(root)
}

/// `start, 2 start, 4 start, ...` up to `max` inclusive.
pub fn doubling_schedule(start: &Nat, max: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    if start.is_zero() {
        return out;
    }
    let mut x = start.clone();
    while x <= *max {
        out.push(x.clone());
        x <<= 1u32;
    }
    out
}

pub fn thinness_profile(basis: &BasisHandle, h: usize, xs: &[Nat]) -> ThinnessProfile {
    let rows = xs
        .iter()
        .map(|x| {
            let count = basis.count(x);
            let ratio = Ratio::new(&count, x, h);
            let ratio_decimal = ratio_decimal(&count, x, h);
            ProfileRow { x: x.clone(), count, ratio, ratio_decimal }
        })
        .collect();
    ThinnessProfile { h, rows }
}
