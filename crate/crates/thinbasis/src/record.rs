//! Serializable output records.
//!
//! Every integer that can outgrow a double is a [`Num`], written as a JSON
//! number up to 2^53 - 1 and as a decimal string above it. Reading accepts
//! either form.

use std::fmt;

use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use thinbasis_core::decompose::Decomposition;
use thinbasis_core::shatrovskii::SchemeRow;
use thinbasis_core::verify::{CoverageReport, LowerBoundReport, ShatBoundReport, ThinnessProfile};
use thinbasis_core::Nat;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest integer a double holds exactly.
pub const MAX_SAFE_INTEGER: u64 = (1 << 53) - 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Num(pub Nat);

impl From<Nat> for Num {
    fn from(n: Nat) -> Self {
        Self(n)
    }
}

impl From<&Nat> for Num {
    fn from(n: &Nat) -> Self {
        Self(n.clone())
    }
}

impl From<u64> for Num {
    fn from(n: u64) -> Self {
        Self(Nat::from(n))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) if v <= MAX_SAFE_INTEGER => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Num;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a nonnegative integer or a string of decimal digits")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
        Ok(Num::from(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
        u64::try_from(v).map(Num::from).map_err(|_| E::custom("negative integer"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return Err(E::invalid_value(de::Unexpected::Str(v), &self));
        }
        v.parse::<Nat>().map(Num).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

fn nums<'a>(v: impl IntoIterator<Item = &'a Nat>) -> Vec<Num> {
    v.into_iter().map(Num::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Construction {
    Shatrovskii {
        h: usize,
        r: Vec<Num>,
        #[serde(rename = "P")]
        p: Num,
        k0: Num,
        k1: Num,
    },
    Gadic {
        g: u32,
        h: usize,
        class_of: Vec<usize>,
    },
    Frobenius {
        aprime: Vec<Num>,
        h: usize,
        threshold: Num,
    },
}

impl Construction {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Shatrovskii { .. } => "shatrovskii",
            Self::Gadic { .. } => "gadic",
            Self::Frobenius { .. } => "frobenius",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub construction: Construction,
    #[serde(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Output {
    Construct(ConstructReport),
    Decompose(DecomposeReport),
    Enumerate(EnumerateReport),
    Verify(VerifyReport),
    Profile(ProfileReport),
    Compare(CompareReport),
}

impl Output {
    pub fn command(&self) -> &'static str {
        match self {
            Self::Construct(_) => "construct",
            Self::Decompose(_) => "decompose",
            Self::Enumerate(_) => "enumerate",
            Self::Verify(_) => "verify",
            Self::Profile(_) => "profile",
            Self::Compare(_) => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRowRecord {
    pub k: Num,
    pub moduli: Vec<Num>,
    pub product: Num,
    pub cofactors: Vec<Num>,
}

impl From<&SchemeRow> for SchemeRowRecord {
    fn from(row: &SchemeRow) -> Self {
        Self {
            k: Num::from(&row.k),
            moduli: nums(&row.moduli),
            product: Num::from(&row.product),
            cofactors: nums(&row.cofactors),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllRecord {
    pub t: usize,
    pub ell: Num,
    /// `k1 + ell`.
    pub k: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeTable {
    /// `(h - 1) S_{k1}`, the initial run `[0, interval_end]` of the basis.
    pub interval_end: Num,
    pub rows: Vec<SchemeRowRecord>,
    pub ells: Vec<EllRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub scheme: Option<SchemeTable>,
    /// Basis elements up to `preview_limit`.
    pub preview_limit: Num,
    pub preview: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub a: Num,
    pub v: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub n: Num,
    pub terms: Vec<Num>,
    /// `terms[i] = a * v` when the term came from a stratum.
    pub factors: Vec<Option<FactorRecord>>,
    pub sum_ok: bool,
    pub members_ok: bool,
}

impl DecomposeReport {
    pub fn new(d: &Decomposition, members_ok: bool) -> Self {
        Self {
            n: Num::from(&d.n),
            terms: d.terms.iter().map(|t| Num::from(&t.element)).collect(),
            factors: d
                .terms
                .iter()
                .map(|t| t.factor.as_ref().map(|(a, v)| FactorRecord { a: a.into(), v: v.into() }))
                .collect(),
            sum_ok: d.is_consistent(),
            members_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub x: Num,
    /// `A(x)`, which does not count 0.
    pub count: Num,
    pub elements: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageRecord {
    #[serde(rename = "N")]
    pub n: Num,
    pub h: usize,
    pub covered: bool,
    pub first_gap: Option<Num>,
    pub elements_used: Num,
}

impl From<&CoverageReport> for CoverageRecord {
    fn from(r: &CoverageReport) -> Self {
        Self {
            n: r.n.into(),
            h: r.h,
            covered: r.covered,
            first_gap: r.first_gap.map(Num::from),
            elements_used: r.elements_used.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundRecord {
    #[serde(rename = "N")]
    pub n: Num,
    pub h: usize,
    pub holds: bool,
    pub first_violation: Option<Num>,
}

impl From<&LowerBoundReport> for LowerBoundRecord {
    fn from(r: &LowerBoundReport) -> Self {
        Self { n: r.n.into(), h: r.h, holds: r.holds, first_violation: r.first_violation.map(Num::from) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub seed: Num,
    pub samples: usize,
    pub max_n: Num,
    pub all_ok: bool,
    /// First few sampled `n` whose decomposition failed a check.
    pub failures: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub x: Num,
    pub count: Num,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinnessRecord {
    pub constant: Num,
    pub rows: Vec<BoundRecord>,
    pub all_hold: bool,
    pub max_ratio: Option<String>,
}

impl From<&ShatBoundReport> for ThinnessRecord {
    fn from(r: &ShatBoundReport) -> Self {
        Self {
            constant: Num::from(&r.constant),
            rows: r
                .rows
                .iter()
                .map(|row| BoundRecord { x: Num::from(&row.x), count: Num::from(&row.count), holds: row.holds })
                .collect(),
            all_hold: r.all_hold,
            max_ratio: r.max_ratio.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub coverage: CoverageRecord,
    pub lower_bound: LowerBoundRecord,
    pub samples: SampleRecord,
    pub thinness: Option<ThinnessRecord>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub x: Num,
    #[serde(rename = "A")]
    pub count: Num,
    pub ratio_decimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub h: usize,
    pub rows: Vec<ProfileRecord>,
    pub counts_monotone: bool,
    pub max_ratio: Option<String>,
}

impl From<&ThinnessProfile> for ProfileReport {
    fn from(p: &ThinnessProfile) -> Self {
        Self {
            h: p.h,
            rows: p
                .rows
                .iter()
                .map(|r| ProfileRecord {
                    x: Num::from(&r.x),
                    count: Num::from(&r.count),
                    ratio_decimal: r.ratio_decimal.clone(),
                })
                .collect(),
            counts_monotone: p.counts_monotone(),
            max_ratio: p.max_row().and_then(|r| r.ratio_decimal.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareEntry {
    pub construction: Construction,
    pub profile: ProfileReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub h: usize,
    pub entries: Vec<CompareEntry>,
}
