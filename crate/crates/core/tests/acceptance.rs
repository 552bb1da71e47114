//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thinbasis_core::arith::gcd_all;
use thinbasis_core::decompose::{lemma3_decompose, theorem_decompose};
use thinbasis_core::frobenius::frobenius_c;
use thinbasis_core::shatrovskii::k0;
use thinbasis_core::verify::{
    counting_lower_bound_check, coverage_check, doubling_schedule, h_fold_sumset, shat_bound_check,
    thinness_profile, Sequential,
};
use thinbasis_core::{BasisHandle, FrobeniusParams, GAdicParams, Nat, ShatBasis, ShatParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn nats(v: &[u64]) -> Vec<Nat> {
    v.iter().copied().map(n).collect()
}

fn shat2() -> ShatParams {
    ShatParams::new(2, nats(&[1, 2]), Some(n(1)), Some(n(3))).unwrap()
}

fn shat3() -> ShatParams {
    ShatParams::new(3, nats(&[1, 2, 3]), Some(n(2)), Some(n(4))).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Membership from first principles in u128, with l_t located by a
/// floating-point estimate corrected by exact steps.
struct MemberOracle {
    h: u32,
    r: Vec<u128>,
    p: u128,
    k1: u128,
    ells: Vec<u128>,
}

impl MemberOracle {
    fn new(h: u32, r: &[u128], p: u128, k1: u128) -> Self {
        Self { h, r: r.to_vec(), p, k1, ells: vec![0, 0] }
    }

    fn product(&self, k: u128) -> u128 {
        self.r.iter().map(|ri| k * self.p + ri).product()
    }

    fn cofactor(&self, k: u128, i: usize) -> u128 {
        self.product(k) / (k * self.p + self.r[i])
    }

    fn ell(&mut self, t: usize) -> u128 {
        while self.ells.len() <= t {
            let tt = self.ells.len() as u32;
            let target = self.product(self.k1).pow(tt);
            let root = (target as f64).powf(1.0 / f64::from(self.h));
            let mut k = ((root - self.r[0] as f64) / self.p as f64).max(self.k1 as f64) as u128;
            while k > self.k1 && self.product(k) > target {
                k -= 1;
            }
            while self.product(k + 1) <= target {
                k += 1;
            }
            self.ells.push(k - self.k1);
        }
        self.ells[t]
    }

    fn member(&mut self, x: u128) -> bool {
        let hm1 = u128::from(self.h - 1);
        if x <= hm1 * self.product(self.k1) {
            return true;
        }
        let h = self.h as usize;
        for t in 1.. {
            let k = self.k1 + self.ell(t);
            if self.cofactor(k, h - 1) > x {
                return false;
            }
            let next = self.k1 + self.ell(t + 1);
            let upper = hm1 * self.product(next);
            for i in 0..h {
                let a = self.cofactor(k, i);
                if x.is_multiple_of(a) && x / a >= 1 && x / a <= upper / a {
                    return true;
                }
            }
        }
        unreachable!()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r2 = coverage_check(&BasisHandle::shatrovskii(shat2()), 2, 1_000_000).map_err(|e| e.to_string())?;
    ensure(r2.covered && r2.first_gap.is_none(), || format!("h=2 gap at {:?}", r2.first_gap))?;
    let r3 = coverage_check(&BasisHandle::shatrovskii(shat3()), 3, 100_000).map_err(|e| e.to_string())?;
    ensure(r3.covered && r3.first_gap.is_none(), || format!("h=3 gap at {:?}", r3.first_gap))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!(
        "h=2 [0,1e6] covered using {} elements, h=3 [0,1e5] covered using {} elements, {took:.2?}",
        r2.elements_used, r3.elements_used
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sets: [(ShatParams, MemberOracle); 2] = [
        (shat2(), MemberOracle::new(2, &[1, 2], 1, 3)),
        (shat3(), MemberOracle::new(3, &[1, 2, 3], 2, 4)),
    ];
    for (params, mut oracle) in sets {
        let h = params.h();
        let basis = ShatBasis::new(params);
        for _ in 0..10_000 {
            let m: u64 = rng.random_range(0..=1_000_000_000);
            let d = theorem_decompose(&basis, &n(m));
            ensure(d.terms.len() == h, || format!("n={m}: {} terms", d.terms.len()))?;
            let mut sum = 0u128;
            for term in &d.terms {
                let e = term.element.to_u128().unwrap();
                ensure(oracle.member(e), || format!("n={m}: {e} is not a member"))?;
                if let Some((a, v)) = &term.factor {
                    ensure(a * v == term.element, || format!("n={m}: bad factor"))?;
                }
                sum += e;
            }
            ensure(sum == u128::from(m), || format!("n={m}: terms sum to {sum}"))?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    Ok(format!("2 x 10^4 decompositions verified, {took:.2?}"))
}

/// Random strictly increasing pairwise coprime residues of length `h`.
fn random_residues(rng: &mut ChaCha8Rng, h: usize) -> Vec<u64> {
    loop {
        let mut r: Vec<u64> = (0..h).map(|_| rng.random_range(1..=60)).collect();
        r.sort_unstable();
        r.dedup();
        if r.len() != h {
            continue;
        }
        let coprime = (0..h).all(|i| (i + 1..h).all(|j| r[i].gcd(&r[j]) == 1));
        if coprime {
            return r;
        }
    }
}

fn random_param_sets() -> Vec<ShatParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..50)
        .map(|_| {
            let h = rng.random_range(2..=5);
            let r = random_residues(&mut rng, h);
            ShatParams::new(h, nats(&r), None, None).unwrap()
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let sets = random_param_sets();
    for params in &sets {
        let h = params.h();
        let k0 = k0(h).unwrap();
        for k in 1..=100u64 {
            let row = params.scheme_row(&n(k)).unwrap();
            let next = params.scheme_row(&n(k + 1)).unwrap();
            let expect_s: Vec<Nat> = params.r().iter().map(|ri| n(k) * params.p() + ri).collect();
            ensure(row.moduli == expect_s, || format!("{params:?} k={k}: moduli"))?;
            for i in 0..h {
                for j in i + 1..h {
                    ensure(row.moduli[i].gcd(&row.moduli[j]).is_one(), || {
                        format!("{params:?} k={k}: s_{} and s_{} share a factor", i + 1, j + 1)
                    })?;
                }
                ensure(&row.cofactors[i] * &row.moduli[i] == row.product, || format!("{params:?} k={k}: cofactor"))?;
            }
            ensure(gcd_all(&row.cofactors).is_one(), || format!("{params:?} k={k}: gcd(a) != 1"))?;
            ensure(row.product < next.product, || format!("{params:?} k={k}: S not increasing"))?;
            if n(k) >= k0 {
                ensure(next.product < &row.product * 2u32, || format!("{params:?} k={k}: S_(k+1) >= 2 S_k"))?;
            }
            ensure(row.product > Nat::one() << h, || format!("{params:?} k={k}: S_k <= 2^h"))?;
        }
    }
    Ok(format!("{} parameter sets x k in [1,100], zero failures", sets.len()))
}

fn criterion_4() -> Outcome {
    let mut sets = vec![shat2(), shat3()];
    sets.extend(random_param_sets().into_iter().take(20));
    for params in &sets {
        let basis = ShatBasis::new(params.clone());
        let base = params.product(params.k1());
        ensure(basis.ell(1).is_zero(), || format!("{params:?}: l_1 != 0"))?;
        let mut power = Nat::one();
        let mut prev: Option<Nat> = None;
        for t in 1..=20usize {
            power *= &base;
            let l = basis.ell(t);
            let k = params.k1() + &l;
            ensure(params.product(&k) <= power, || format!("{params:?} t={t}: S_(k1+l) > S_k1^t"))?;
            ensure(power < params.product(&(&k + 1u32)), || format!("{params:?} t={t}: S_k1^t >= S_(k1+l+1)"))?;
            if let Some(p) = &prev {
                ensure(l > *p, || format!("{params:?} t={t}: not strictly increasing"))?;
            }
            prev = Some(l);
        }
    }
    Ok(format!("{} parameter sets, t in [1,20]", sets.len()))
}

fn criterion_5() -> Outcome {
    let row = shat2().scheme_row(&n(3)).unwrap();
    // a = (5, 4), s = (4, 5)
    for m in 21..=520u64 {
        let solutions: Vec<(u64, u64)> = (0..4u64)
            .filter(|v1| (m - 5 * v1) % 4 == 0)
            .map(|v1| (v1, (m - 5 * v1) / 4))
            .collect();
        ensure(solutions.len() == 1, || format!("n={m}: {} solutions with v1 < s1", solutions.len()))?;
        let v = lemma3_decompose(&row, &n(m), &n(520)).map_err(|e| e.to_string())?;
        ensure(v == nats(&[solutions[0].0, solutions[0].1]), || format!("n={m}: got {v:?}"))?;
    }
    Ok("all n in (20, 520] match the unique exhaustive solution".into())
}

fn criterion_6() -> Outcome {
    let xs: Vec<Nat> = (10..=30).step_by(4).map(|e| n(1 << e)).collect();
    let mut notes = Vec::new();
    for params in [shat2(), shat3()] {
        let h = params.h();
        let constant = params.product(params.k1()) * (24 * h * (h - 1));
        let rep = shat_bound_check(&ShatBasis::new(params), &xs);
        ensure(rep.constant == constant, || format!("h={h}: constant {}", rep.constant))?;
        let c_pow = num_traits::pow(constant, h);
        for row in &rep.rows {
            ensure(num_traits::pow(row.count.clone(), h) < &c_pow * &row.x, || {
                format!("h={h} x={}: A(x)={} violates the bound", row.x, row.count)
            })?;
        }
        ensure(rep.all_hold, || format!("h={h}: report disagrees"))?;
        notes.push(format!("h={h} c={} max A/x^(1/h)={}", rep.constant, rep.max_ratio.unwrap_or_default()));
    }
    Ok(notes.join("; "))
}

fn criterion_7() -> Outcome {
    let bases = [
        ("shatrovskii h=2", BasisHandle::shatrovskii(shat2()), 2),
        ("shatrovskii h=3", BasisHandle::shatrovskii(shat3()), 3),
        ("raikov-stohr g=2 h=2", BasisHandle::GAdic(GAdicParams::raikov_stohr(2, 2).unwrap()), 2),
        ("raikov-stohr g=2 h=3", BasisHandle::GAdic(GAdicParams::raikov_stohr(2, 3).unwrap()), 3),
        ("frobenius (3,5)", BasisHandle::Frobenius(FrobeniusParams::new(nats(&[3, 5])).unwrap()), 2),
    ];
    for (name, basis, h) in &bases {
        let rep = counting_lower_bound_check(basis, *h, 10_000);
        ensure(rep.holds, || format!("{name}: fails at x={:?}", rep.first_violation))?;
    }
    Ok(format!("{} bases, every x <= 10^4", bases.len()))
}

fn criterion_8() -> Outcome {
    for (g, h) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let p = GAdicParams::raikov_stohr(g, h).unwrap();
        for m in 0..=100_000u64 {
            let parts = p.decompose(&n(m));
            ensure(parts.iter().sum::<Nat>() == n(m), || format!("g={g} h={h} n={m}: bad sum"))?;
            for (i, a) in parts.iter().enumerate() {
                ensure(p.component_member(i + 1, a).unwrap(), || format!("g={g} h={h} n={m}: part {i}"))?;
            }
        }
    }
    let mut notes = Vec::new();
    for h in [2usize, 3] {
        let basis = BasisHandle::GAdic(GAdicParams::raikov_stohr(2, h).unwrap());
        let xs = doubling_schedule(&n(1), &n(1 << 30));
        let prof = thinness_profile(&basis, h, &xs);
        ensure(prof.counts_monotone(), || format!("h={h}: counts not monotone"))?;
        ensure(prof.bounded_by(&n(4 * h as u64)), || format!("h={h}: A(x) >= 4h x^(1/h)"))?;
        ensure(prof.growth_decelerates(h), || format!("h={h}: ratio growth accelerates"))?;
        let max = prof.max_row().and_then(|r| r.ratio_decimal.clone()).unwrap_or_default();
        notes.push(format!("g=2 h={h} max A/x^(1/h)={max}"));
    }
    Ok(format!("additive systems cover n <= 10^5; {}", notes.join("; ")))
}

fn naive_representable(gens: &[u64], m: u64) -> bool {
    match gens.split_first() {
        None => m == 0,
        Some((&a, rest)) => (0..=m / a).any(|v| naive_representable(rest, m - a * v)),
    }
}

fn criterion_9() -> Outcome {
    for (gens, want) in [(&[3u64, 5][..], 8u64), (&[6, 10, 15], 30)] {
        let c = frobenius_c(&nats(gens)).map_err(|e| e.to_string())?;
        ensure(c == n(want), || format!("{gens:?}: C = {c}"))?;
        let naive = (0..=100u64).rev().find(|&m| !naive_representable(gens, m)).map_or(0, |m| m + 1);
        ensure(naive == want, || format!("{gens:?}: naive threshold {naive}"))?;
    }
    let basis = BasisHandle::Frobenius(FrobeniusParams::new(nats(&[3, 5])).unwrap());
    let rep = coverage_check(&basis, 2, 10_000).map_err(|e| e.to_string())?;
    ensure(rep.covered, || format!("(3,5) gap at {:?}", rep.first_gap))?;
    Ok("C(3,5)=8, C(6,10,15)=30, (3,5) covers [0,10^4] at h=2".into())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for inst in 0..100 {
        let limit: usize = rng.random_range(0..=10_000);
        let size: usize = rng.random_range(0..=200);
        let mut elems: Vec<usize> = (0..size).map(|_| rng.random_range(0..=limit)).collect();
        elems.sort_unstable();
        elems.dedup();
        let mut naive = vec![false; limit + 1];
        for &a in &elems {
            for &b in &elems {
                if a + b <= limit {
                    naive[a + b] = true;
                }
            }
        }
        let fast = h_fold_sumset(&elems, 2, limit, &Sequential, 7);
        for (x, &want) in naive.iter().enumerate() {
            ensure(fast.contains(x) == want, || format!("instance {inst}: mismatch at {x}"))?;
        }
    }
    Ok("100 random instances identical".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("basis coverage", criterion_1),
        ("constructive decomposition", criterion_2),
        ("scheme row coprimality and growth", criterion_3),
        ("strata index sandwich", criterion_4),
        ("bounded solver vs exhaustive search", criterion_5),
        ("thinness bound", criterion_6),
        ("counting lower bound", criterion_7),
        ("raikov-stohr systems", criterion_8),
        ("frobenius threshold", criterion_9),
        ("shift-or kernel vs naive sumset", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
