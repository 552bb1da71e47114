//! The Shatrovskiĭ construction.
//!
//! Fix `h >= 2`, pairwise coprime `r_1 < ... < r_h` and a step `P` that is at
//! least `r_h - r_1` and divisible by every prime dividing some difference
//! `r_j - r_i`. For `k >= 1` the moduli `s_{i,k} = kP + r_i` are pairwise
//! coprime, their product is `S_k`, and the cofactors `a_{i,k} = S_k / s_{i,k}`
//! have gcd 1.
//!
//! Choosing `k1 >= k0(h)` makes `S_{k+1} < 2 S_k` for every `k >= k1`, so the
//! strata indices `l_t` (largest `l` with `S_{k1+l} <= S_{k1}^t`) are strictly
//! increasing. Stratum `t` contributes the multiples `a_{i,k1+l_t} * v` with
//! `1 <= v <= (h-1) S_{k1+l_{t+1}} / a_{i,k1+l_t}`; together with the interval
//! `[0, (h-1) S_{k1}]` they form a thin basis of order `h`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{gcd_all, pairwise_coprime, prime_factors, Nat};
use crate::merge::{Elements, Run};
use crate::{Error, Result};

/// Smallest `k0` with `1 + 1/k < 2^(1/h)` for all `k >= k0`.
///
/// Equal to `floor(1 / (2^(1/h) - 1)) + 1`, found as one past the largest
/// `m >= 1` with `2 m^h <= (m + 1)^h`. Exact integer powers only.
pub fn k0(h: usize) -> Result<Nat> {
    if h < 2 {
        return Err(Error::OrderTooSmall { h, min: 2 });
    }
    let exp = u32::try_from(h).map_err(|_| Error::InvalidArgument(format!("h = {h} too large")))?;
    let qualifies = |m: &Nat| -> bool { m.pow(exp) * 2u32 <= (m + 1u32).pow(exp) };
    // The predicate holds for m = 1 and is monotone in m.
    let mut m = Nat::one();
    while qualifies(&(&m + 1u32)) {
        m += 1u32;
    }
    Ok(m + 1u32)
}

fn check_residues(r: &[Nat]) -> Result<()> {
    if r.len() < 2 {
        return Err(Error::OrderTooSmall { h: r.len(), min: 2 });
    }
    if r.iter().any(Zero::is_zero) {
        return Err(Error::NonPositiveResidue);
    }
    if r.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    if !pairwise_coprime(r)? {
        return Err(Error::NotPairwiseCoprime);
    }
    Ok(())
}

/// Distinct primes dividing at least one difference `r_j - r_i`, `i < j`.
fn difference_primes(r: &[Nat]) -> Result<Vec<Nat>> {
    let mut primes: Vec<Nat> = Vec::new();
    for (i, ri) in r.iter().enumerate() {
        for rj in &r[i + 1..] {
            for p in prime_factors(&(rj - ri))? {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes.sort();
    Ok(primes)
}

/// Smallest admissible step `P` for the residues `r`.
///
/// With `R` the radical of the product of all differences this is the least
/// multiple of `R` that is at least `r_h - r_1`.
pub fn choose_p(r: &[Nat]) -> Result<Nat> {
    check_residues(r)?;
    let rad: Nat = difference_primes(r)?.iter().product();
    let span = &r[r.len() - 1] - &r[0];
    Ok(span.div_ceil(&rad) * rad)
}

/// Validated parameters `(h, r, P, k1)` of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatParams {
    h: usize,
    r: Vec<Nat>,
    p: Nat,
    k1: Nat,
}

impl ShatParams {
    /// Validates every hypothesis of the construction. `p` defaults to
    /// [`choose_p`] and `k1` to [`k0`].
    pub fn new(h: usize, r: Vec<Nat>, p: Option<Nat>, k1: Option<Nat>) -> Result<Self> {
        if h < 2 {
            return Err(Error::OrderTooSmall { h, min: 2 });
        }
        if r.len() != h {
            return Err(Error::ResidueCount { expected: h, got: r.len() });
        }
        check_residues(&r)?;
        let p = match p {
            Some(p) => p,
            None => choose_p(&r)?,
        };
        let span = &r[h - 1] - &r[0];
        if p.is_zero() || p < span {
            return Err(Error::PTooSmall { p, span });
        }
        for prime in difference_primes(&r)? {
            if !(&p % &prime).is_zero() {
                return Err(Error::PMissingPrime { prime, p });
            }
        }
        let k0 = k0(h)?;
        let k1 = k1.unwrap_or_else(|| k0.clone());
        if k1 < k0 {
            return Err(Error::K1BelowK0 { k1, k0 });
        }
        Ok(Self { h, r, p, k1 })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn r(&self) -> &[Nat] {
        &self.r
    }

    pub fn p(&self) -> &Nat {
        &self.p
    }

    pub fn k1(&self) -> &Nat {
        &self.k1
    }

    /// `S_k = prod_i (kP + r_i)`.
    pub fn product(&self, k: &Nat) -> Nat {
        let kp = k * &self.p;
        self.r.iter().map(|ri| &kp + ri).product()
    }

    /// Right end `(h-1) S_{k1}` of the initial interval of the basis.
    pub fn interval_end(&self) -> Nat {
        self.product(&self.k1) * self.h_minus_one()
    }

    pub(crate) fn h_minus_one(&self) -> Nat {
        Nat::from(self.h - 1)
    }

    pub fn scheme_row(&self, k: &Nat) -> Result<SchemeRow> {
        if k.is_zero() {
            return Err(Error::InvalidArgument("scheme rows start at k = 1".into()));
        }
        let kp = k * &self.p;
        let moduli: Vec<Nat> = self.r.iter().map(|ri| &kp + ri).collect();
        let product: Nat = moduli.iter().product();
        let cofactors = moduli.iter().map(|s| &product / s).collect();
        Ok(SchemeRow { k: k.clone(), moduli, product, cofactors })
    }
}

/// The derived quantities for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRow {
    pub k: Nat,
    /// `s_{i,k} = kP + r_i`, strictly increasing.
    pub moduli: Vec<Nat>,
    /// `S_k`.
    pub product: Nat,
    /// `a_{i,k} = S_k / s_{i,k}`, strictly decreasing.
    pub cofactors: Vec<Nat>,
}

impl SchemeRow {
    pub fn h(&self) -> usize {
        self.moduli.len()
    }

    /// Checks the structural facts every row must satisfy: increasing
    /// pairwise coprime moduli, exact cofactors, decreasing cofactors with
    /// gcd 1.
    pub fn check_invariants(&self) -> bool {
        let increasing = self.moduli.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.cofactors.windows(2).all(|w| w[0] > w[1]);
        let exact = self
            .moduli
            .iter()
            .zip(&self.cofactors)
            .all(|(s, a)| s * a == self.product);
        let product_ok = self.moduli.iter().product::<Nat>() == self.product;
        increasing
            && decreasing
            && exact
            && product_ok
            && pairwise_coprime(&self.moduli).unwrap_or(false)
            && gcd_all(&self.cofactors).is_one()
    }
}

/// Largest `l >= lo` with `S_{k1+l} <= target`, given `S_{k1+lo} <= target`.
/// Gallops upward from `lo`, then bisects.
fn largest_index_below(params: &ShatParams, target: &Nat, lo: Nat) -> Nat {
    let s_at = |l: &Nat| params.product(&(params.k1() + l));
    let mut lo = lo;
    let mut step = Nat::one();
    let mut hi = &lo + &step;
    while s_at(&hi) <= *target {
        lo = hi;
        step <<= 1u32;
        hi = &lo + &step;
    }
    // S(lo) <= target < S(hi)
    while &hi - &lo > Nat::one() {
        let mid = (&lo + &hi) >> 1u32;
        if s_at(&mid) <= *target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `l_t`, the unique `l` with `S_{k1+l} <= S_{k1}^t < S_{k1+l+1}`, computed
/// without caching. `l_0` is anchored at 0.
pub fn ell(params: &ShatParams, t: usize) -> Nat {
    if t == 0 {
        return Nat::zero();
    }
    let base = params.product(params.k1());
    let target = power(&base, t);
    largest_index_below(params, &target, Nat::zero())
}

fn power(base: &Nat, t: usize) -> Nat {
    match u32::try_from(t) {
        Ok(e) => base.pow(e),
        Err(_) => num_traits::pow::pow(base.clone(), t),
    }
}

/// Lazily extended cache of `l_0, l_1, l_2, ...`. Safe to share: extension
/// happens under an internal lock.
#[derive(Debug)]
pub struct EllSeq {
    params: ShatParams,
    inner: spin::Mutex<EllCache>,
}

#[derive(Debug)]
struct EllCache {
    /// `values[t] = l_t`.
    values: Vec<Nat>,
    /// `S_{k1}^{values.len() - 1}`.
    last_power: Nat,
}

impl EllSeq {
    pub fn new(params: ShatParams) -> Self {
        let inner = EllCache { values: alloc::vec![Nat::zero(), Nat::zero()], last_power: params.product(params.k1()) };
        Self { params, inner: spin::Mutex::new(inner) }
    }

    pub fn params(&self) -> &ShatParams {
        &self.params
    }

    pub fn get(&self, t: usize) -> Nat {
        let mut cache = self.inner.lock();
        let base = self.params.product(self.params.k1());
        while cache.values.len() <= t {
            cache.last_power *= &base;
            let prev = cache.values.last().cloned().unwrap_or_default();
            let next = largest_index_below(&self.params, &cache.last_power, prev);
            cache.values.push(next);
        }
        cache.values[t].clone()
    }

    /// Number of cached entries, `l_0` included.
    pub fn cached_len(&self) -> usize {
        self.inner.lock().values.len()
    }
}

impl Clone for EllSeq {
    fn clone(&self) -> Self {
        let cache = self.inner.lock();
        let inner = EllCache { values: cache.values.clone(), last_power: cache.last_power.clone() };
        Self { params: self.params.clone(), inner: spin::Mutex::new(inner) }
    }
}

/// Everything needed to work with stratum `t >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub t: usize,
    pub ell: Nat,
    /// Row at `k = k1 + l_t`.
    pub row: SchemeRow,
    /// `(h-1) S_{k1+l_t}`; the stratum decomposes `n` in `(lower, upper]`.
    pub lower: Nat,
    /// `(h-1) S_{k1+l_{t+1}}`.
    pub upper: Nat,
    /// `floor(upper / a_{i,k})` for each `i`.
    pub v_bounds: Vec<Nat>,
}

impl Stratum {
    /// Smallest positive element, `a_{h,k}`.
    pub fn min_element(&self) -> &Nat {
        &self.row.cofactors[self.row.h() - 1]
    }
}

/// A Shatrovskiĭ basis with cached strata.
#[derive(Debug)]
pub struct ShatBasis {
    ells: EllSeq,
    strata: spin::Mutex<Vec<Arc<Stratum>>>,
}

impl Clone for ShatBasis {
    fn clone(&self) -> Self {
        Self { ells: self.ells.clone(), strata: spin::Mutex::new(self.strata.lock().clone()) }
    }
}

impl ShatBasis {
    pub fn new(params: ShatParams) -> Self {
        Self { ells: EllSeq::new(params), strata: spin::Mutex::new(Vec::new()) }
    }

    pub fn params(&self) -> &ShatParams {
        self.ells.params()
    }

    pub fn h(&self) -> usize {
        self.params().h()
    }

    pub fn ell(&self, t: usize) -> Nat {
        self.ells.get(t)
    }

    /// Stratum `t`; panics for `t == 0`.
    pub fn stratum(&self, t: usize) -> Arc<Stratum> {
        assert!(t >= 1, "strata are numbered from 1");
        if let Some(s) = self.strata.lock().get(t - 1) {
            return Arc::clone(s);
        }
        // Build outside the lock; ell() takes its own lock.
        let built = {
            let known = self.strata.lock().len();
            let mut fresh = Vec::new();
            for tt in known + 1..=t {
                fresh.push(Arc::new(self.build_stratum(tt)));
            }
            fresh
        };
        let mut strata = self.strata.lock();
        for s in built {
            if s.t == strata.len() + 1 {
                strata.push(s);
            }
        }
        Arc::clone(&strata[t - 1])
    }

    fn build_stratum(&self, t: usize) -> Stratum {
        let params = self.params();
        let ell = self.ell(t);
        let k = params.k1() + &ell;
        let row = params.scheme_row(&k).expect("k1 >= 1");
        let hm1 = params.h_minus_one();
        let lower = &row.product * &hm1;
        let upper = params.product(&(params.k1() + self.ell(t + 1))) * &hm1;
        let v_bounds = row.cofactors.iter().map(|a| &upper / a).collect();
        Stratum { t, ell, row, lower, upper, v_bounds }
    }

    /// `floor((h-1) S_{k1+l_{t+1}} / a_{i,k1+l_t})` with `i` counted from 1.
    pub fn v_bound(&self, t: usize, i: usize) -> Result<Nat> {
        if t == 0 {
            return Err(Error::InvalidArgument("v_bound is defined for t >= 1".into()));
        }
        if i == 0 || i > self.h() {
            return Err(Error::InvalidArgument(format!("index i = {i} outside 1..={}", self.h())));
        }
        Ok(self.stratum(t).v_bounds[i - 1].clone())
    }

    /// Strata whose smallest positive element does not exceed `x`.
    pub fn strata_up_to(&self, x: &Nat) -> Vec<Arc<Stratum>> {
        let mut out = Vec::new();
        for t in 1.. {
            let s = self.stratum(t);
            if s.min_element() > x {
                break;
            }
            out.push(s);
        }
        out
    }

    pub fn member(&self, x: &Nat) -> bool {
        if *x <= self.params().interval_end() {
            return true;
        }
        self.strata_up_to(x).iter().any(|s| {
            s.row.cofactors.iter().zip(&s.v_bounds).any(|(a, bound)| {
                let (q, rem) = x.div_rem(a);
                rem.is_zero() && !q.is_zero() && q <= *bound
            })
        })
    }

    /// Ascending, deduplicated elements of the basis in `[0, x]`.
    pub fn elements_up_to(&self, x: &Nat) -> Elements {
        let mut runs = Vec::new();
        let end = core::cmp::min(self.params().interval_end(), x.clone());
        runs.push(Run { next: Nat::zero(), step: Nat::one(), last: end });
        for s in self.strata_up_to(x) {
            for (a, bound) in s.row.cofactors.iter().zip(&s.v_bounds) {
                let v_max = core::cmp::min(bound.clone(), x / a);
                if !v_max.is_zero() {
                    runs.push(Run { next: a.clone(), step: a.clone(), last: a * v_max });
                }
            }
        }
        Elements::new(runs)
    }

    pub fn enumerate_up_to(&self, x: &Nat) -> Vec<Nat> {
        self.elements_up_to(x).collect()
    }

    /// `A(x)`: elements in `[1, x]`.
    pub fn count(&self, x: &Nat) -> Nat {
        Nat::from(self.elements_up_to(x).filter(|e| !e.is_zero()).count())
    }
}
