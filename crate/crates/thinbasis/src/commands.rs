use std::num::NonZeroUsize;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thinbasis_core::bitset::words_for;
use thinbasis_core::verify::{
    counting_lower_bound_check, coverage_check_with, doubling_schedule, shat_bound_check, thinness_profile,
    CoverageOptions, DEFAULT_MEM_CAP_BYTES,
};
use thinbasis_core::{BasisHandle, Nat};

use crate::cli::{BasisArgs, ScheduleArgs};
use crate::config::Basis;
use crate::error::{CliError, CliResult};
use crate::record::{
    CompareEntry, CompareReport, ConstructReport, CoverageRecord, DecomposeReport, EllRecord, EnumerateReport,
    LowerBoundRecord, Num, ProfileReport, SampleRecord, SchemeRowRecord, SchemeTable, ThinnessRecord, VerifyReport,
};
use crate::runner::Threaded;

pub const MEM_CAP_ENV: &str = "THINBASIS_MEM_CAP_BYTES";

const MAX_REPORTED_FAILURES: usize = 10;

/// The coverage memory cap from the environment, or the library default.
pub fn mem_cap_from_env() -> CliResult<u64> {
    match std::env::var(MEM_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MEM_CAP_ENV} must be a byte count, got `{v}`"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MEM_CAP_BYTES),
        Err(e) => Err(CliError::Usage(format!("{MEM_CAP_ENV}: {e}"))),
    }
}

pub fn construct(basis: &Basis, rows: u64, ells: usize, preview: &Nat) -> CliResult<ConstructReport> {
    let scheme = match &basis.handle {
        BasisHandle::Shatrovskii(b) => {
            let params = b.params();
            let rows = (0..=rows)
                .map(|d| params.scheme_row(&(params.k1() + d)).map(|row| SchemeRowRecord::from(&row)))
                .collect::<Result<Vec<_>, _>>()?;
            let ells = (1..=ells)
                .map(|t| {
                    let ell = b.ell(t);
                    EllRecord { t, k: Num(params.k1() + &ell), ell: Num(ell) }
                })
                .collect();
            Some(SchemeTable { interval_end: params.interval_end().into(), rows, ells })
        }
        _ => None,
    };
    let preview_list = basis.handle.enumerate_up_to(preview).iter().map(Num::from).collect();
    Ok(ConstructReport { scheme, preview_limit: preview.into(), preview: preview_list })
}

/// Decomposition of `n`, with its term count and membership re-checked.
pub fn decompose(basis: &Basis, n: &Nat) -> CliResult<DecomposeReport> {
    let d = basis
        .handle
        .decompose(n)
        .ok_or_else(|| CliError::Usage(format!("{} bases have no decomposer", basis.handle.kind())))?;
    let members_ok = d.terms.len() == basis.h && d.elements().all(|e| basis.handle.member(e));
    Ok(DecomposeReport::new(&d, members_ok))
}

pub fn enumerate(basis: &Basis, x: &Nat, max_elements: u64) -> CliResult<EnumerateReport> {
    let count = basis.handle.count(x);
    if count >= Nat::from(max_elements) {
        return Err(CliError::TooManyElements { x: x.to_string(), count: count.to_string(), cap: max_elements });
    }
    let elements = basis.handle.enumerate_up_to(x).iter().map(Num::from).collect();
    Ok(EnumerateReport { x: x.into(), count: count.into(), elements })
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n: u64,
    pub jobs: usize,
    pub seed: u64,
    pub samples: usize,
    pub mem_cap_bytes: u64,
}

/// Coverage of `[0, N]`, the counting lower bound on `[0, N]`, seeded random
/// decompositions in `[0, N]`, and for shatrovskii bases the thinness bound on
/// a doubling schedule up to `N`.
pub fn verify(basis: &Basis, opts: &VerifyOptions) -> CliResult<VerifyReport> {
    let jobs = NonZeroUsize::new(opts.jobs).ok_or_else(|| CliError::Usage("--jobs must be at least 1".into()))?;
    let mut cov_opts = CoverageOptions { mem_cap_bytes: opts.mem_cap_bytes, ..CoverageOptions::default() };
    if jobs.get() > 1 {
        let words = words_for(usize::try_from(opts.n).unwrap_or(usize::MAX).saturating_add(1));
        cov_opts.chunk_words = words.div_ceil(jobs.get() * 4).max(256);
    }
    let coverage = coverage_check_with(&basis.handle, basis.h, opts.n, &cov_opts, &Threaded::new(jobs))?;
    let lower = counting_lower_bound_check(&basis.handle, basis.h, opts.n);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    let mut all_ok = true;
    for _ in 0..opts.samples {
        let n = Nat::from(rng.random_range(0..=opts.n));
        let d = decompose(basis, &n)?;
        if !(d.sum_ok && d.members_ok) {
            all_ok = false;
            if failures.len() < MAX_REPORTED_FAILURES {
                failures.push(Num(n));
            }
        }
    }
    let samples = SampleRecord { seed: opts.seed.into(), samples: opts.samples, max_n: opts.n.into(), all_ok, failures };

    let thinness = match &basis.handle {
        BasisHandle::Shatrovskii(b) if opts.n > 0 => {
            let xs = doubling_schedule(&Nat::from(1u32), &Nat::from(opts.n));
            Some(ThinnessRecord::from(&shat_bound_check(b, &xs)))
        }
        _ => None,
    };

    let passed = coverage.covered && lower.holds && all_ok && thinness.as_ref().is_none_or(|t| t.all_hold);
    Ok(VerifyReport {
        coverage: CoverageRecord::from(&coverage),
        lower_bound: LowerBoundRecord::from(&lower),
        samples,
        thinness,
        passed,
    })
}

fn schedule(s: &ScheduleArgs) -> CliResult<Vec<Nat>> {
    if s.start.is_zero() {
        return Err(CliError::Usage("--start must be positive".into()));
    }
    Ok(doubling_schedule(&s.start, &s.x))
}

pub fn profile(basis: &Basis, s: &ScheduleArgs) -> CliResult<ProfileReport> {
    let xs = schedule(s)?;
    Ok(ProfileReport::from(&thinness_profile(&basis.handle, basis.h, &xs)))
}

/// Shatrovskii, g-adic and multiples bases of one order `h`, each built from
/// the flags that apply to it and defaults otherwise.
pub fn compare(args: &BasisArgs, s: &ScheduleArgs) -> CliResult<(Basis, CompareReport)> {
    if args.kind.is_some() {
        return Err(CliError::Usage("compare always profiles all three constructions; drop --kind".into()));
    }
    let shat = args.shatrovskii()?;
    let h = shat.h;
    let sized = BasisArgs { h: Some(h), ..args.clone() };
    let bases = [&shat, &sized.gadic()?, &sized.frobenius()?]
        .into_iter()
        .map(|b| Ok(CompareEntry { construction: b.construction.clone(), profile: profile(b, s)? }))
        .collect::<CliResult<Vec<_>>>()?;
    Ok((shat, CompareReport { h, entries: bases }))
}
