//! Turning arguments into a validated basis.

use num_traits::One;

use thinbasis_core::shatrovskii::k0;
use thinbasis_core::{BasisHandle, FrobeniusParams, GAdicParams, Nat, ShatParams};

use crate::cli::{BasisArgs, Kind};
use crate::error::{CliError, CliResult};
use crate::record::{Construction, Num};

pub struct Basis {
    pub construction: Construction,
    pub handle: BasisHandle,
    pub h: usize,
}

/// `1` followed by the first `h - 1` primes, a valid residue list for any `h`.
pub fn default_residues(h: usize) -> Vec<Nat> {
    let mut r = vec![Nat::one()];
    r.extend(primes(h.saturating_sub(1)).into_iter().map(Nat::from));
    r
}

pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl BasisArgs {
    pub fn resolved_kind(&self) -> Kind {
        self.kind.unwrap_or(if self.aprime.is_some() {
            Kind::Frobenius
        } else if self.g.is_some() || self.class_of.is_some() {
            Kind::Gadic
        } else {
            Kind::Shatrovskii
        })
    }

    fn reject_foreign(&self, kind: Kind) -> CliResult<()> {
        let present = [
            ("--r", self.r.is_some(), Kind::Shatrovskii),
            ("--P", self.p.is_some(), Kind::Shatrovskii),
            ("--k1", self.k1.is_some(), Kind::Shatrovskii),
            ("--g", self.g.is_some(), Kind::Gadic),
            ("--class-of", self.class_of.is_some(), Kind::Gadic),
            ("--aprime", self.aprime.is_some(), Kind::Frobenius),
        ];
        match present.iter().find(|(_, given, owner)| *given && *owner != kind) {
            Some((flag, _, _)) => Err(usage(format!("{flag} does not apply to a {kind:?} basis").to_lowercase())),
            None => Ok(()),
        }
    }

    pub fn build(&self) -> CliResult<Basis> {
        let kind = self.resolved_kind();
        self.reject_foreign(kind)?;
        match kind {
            Kind::Shatrovskii => self.shatrovskii(),
            Kind::Gadic => self.gadic(),
            Kind::Frobenius => self.frobenius(),
        }
    }

    pub fn shatrovskii(&self) -> CliResult<Basis> {
        let h = match (self.h, &self.r) {
            (Some(h), _) => h,
            (None, Some(r)) => r.len(),
            (None, None) => return Err(usage("--h or --r is required")),
        };
        let r = self.r.clone().unwrap_or_else(|| default_residues(h));
        let params = ShatParams::new(h, r, self.p.clone(), self.k1.clone())?;
        let construction = Construction::Shatrovskii {
            h,
            r: params.r().iter().map(Num::from).collect(),
            p: params.p().into(),
            k0: k0(h)?.into(),
            k1: params.k1().into(),
        };
        Ok(Basis { construction, handle: BasisHandle::shatrovskii(params), h })
    }

    /// Base `g` defaults to 2 and the component map to residue classes.
    pub fn gadic(&self) -> CliResult<Basis> {
        let h = self.h.ok_or_else(|| usage("--h is required for a gadic basis"))?;
        let g = self.g.unwrap_or(2);
        let class_of = self.class_of.clone().unwrap_or_else(|| (1..=h).collect());
        let params = GAdicParams::new(g, h, class_of)?;
        let construction = Construction::Gadic { g, h, class_of: params.class_of().to_vec() };
        Ok(Basis { construction, handle: BasisHandle::GAdic(params), h })
    }

    /// Generators default to the first `h` primes.
    pub fn frobenius(&self) -> CliResult<Basis> {
        let aprime = match (&self.aprime, self.h) {
            (Some(a), _) => a.clone(),
            (None, Some(h)) => primes(h).into_iter().map(Nat::from).collect(),
            (None, None) => return Err(usage("--aprime or --h is required for a frobenius basis")),
        };
        if let Some(h) = self.h.filter(|&h| h != aprime.len()) {
            return Err(usage(format!("--h {h} does not match the {} generators in --aprime", aprime.len())));
        }
        let params = FrobeniusParams::new(aprime)?;
        let h = params.h();
        let construction = Construction::Frobenius {
            aprime: params.aprime().iter().map(Num::from).collect(),
            h,
            threshold: params.threshold().into(),
        };
        Ok(Basis { construction, handle: BasisHandle::Frobenius(params), h })
    }
}
