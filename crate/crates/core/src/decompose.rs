//! Constructive representations of integers as sums of exactly `h` basis
//! elements.
//!
//! [`lemma3_decompose`] solves `sum a_{i,k} v_i = n` in nonnegative integers
//! for `(h-1) S_k < n`: a Bézout solution is reduced modulo `s_{i,k}` in each
//! of the first `h-1` coordinates and the last coordinate absorbs the rest.
//! [`theorem_decompose`] picks the stratum containing `n` and turns the
//! solution into `h` members of the basis.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{bezout_multi, to_int, to_nat, Int, Nat};
use crate::shatrovskii::{SchemeRow, ShatBasis};
use crate::{Error, Result};

/// One summand. `factor` records `(a, v)` with `element == a * v` when the
/// summand came from a multiple of a cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub element: Nat,
    pub factor: Option<(Nat, Nat)>,
}

impl Term {
    pub fn plain(element: Nat) -> Self {
        Self { element, factor: None }
    }

    pub fn zero() -> Self {
        Self::plain(Nat::zero())
    }
}

/// `n` written as exactly `h` basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: Nat,
    pub terms: Vec<Term>,
}

impl Decomposition {
    pub fn elements(&self) -> impl Iterator<Item = &Nat> {
        self.terms.iter().map(|t| &t.element)
    }

    pub fn sum(&self) -> Nat {
        self.elements().sum()
    }

    /// Sum equals `n`, and every recorded factor multiplies out.
    pub fn is_consistent(&self) -> bool {
        self.sum() == self.n
            && self.terms.iter().all(|t| match &t.factor {
                Some((a, v)) => a * v == t.element,
                None => true,
            })
    }

    /// Initial-interval representation: `n` followed by `h - 1` zeros.
    pub(crate) fn padded(n: Nat, h: usize) -> Self {
        let mut terms = Vec::with_capacity(h);
        terms.push(Term::plain(n.clone()));
        terms.resize(h, Term::zero());
        Self { n, terms }
    }
}

/// Nonnegative `v` with `sum a_{i,k} v_i == n` and `v_i <= L / a_{i,k}`.
///
/// Requires `(h-1) S_k < n <= L`. The result also satisfies `v_i < s_{i,k}`
/// for `i < h` and `v_h >= 1`.
pub fn lemma3_decompose(row: &SchemeRow, n: &Nat, limit: &Nat) -> Result<Vec<Nat>> {
    let h = row.h();
    let floor = &row.product * (h - 1);
    if *n <= floor {
        return Err(Error::Domain(format!("n = {n} must exceed (h-1)*S_k = {floor}")));
    }
    if n > limit {
        return Err(Error::Domain(format!("n = {n} must not exceed L = {limit}")));
    }

    let cert = bezout_multi(&row.cofactors)?;
    debug_assert!(cert.g.is_one());
    let n_int = to_int(n);
    let u: Vec<Int> = cert.coeffs.iter().map(|c| c * &n_int).collect();

    let mut v: Vec<Nat> = Vec::with_capacity(h);
    let mut carry = Int::zero();
    for (ui, si) in u.iter().zip(&row.moduli).take(h - 1) {
        let si = to_int(si);
        let vi = ui.mod_floor(&si);
        // u_i - v_i is a multiple of s_i by construction
        carry += (ui - &vi) / &si;
        v.push(to_nat(&vi).expect("mod_floor by a positive modulus is nonnegative"));
    }
    let last = &u[h - 1] + to_int(&row.moduli[h - 1]) * carry;
    let last = to_nat(&last)
        .filter(|x| !x.is_zero())
        .ok_or_else(|| Error::Domain(format!("last coordinate {last} is not positive")))?;
    v.push(last);

    debug_assert_eq!(
        &row.cofactors.iter().zip(&v).map(|(a, x)| a * x).sum::<Nat>(),
        n
    );
    Ok(v)
}

/// Unique `t >= 1` with `(h-1) S_{k1+l_t} < n <= (h-1) S_{k1+l_{t+1}}`.
pub fn find_t(basis: &ShatBasis, n: &Nat) -> Result<usize> {
    let end = basis.params().interval_end();
    if *n <= end {
        return Err(Error::Domain(format!("n = {n} lies in the initial interval [0, {end}]")));
    }
    let mut t = 1;
    loop {
        let s = basis.stratum(t);
        if *n <= s.upper {
            return Ok(t);
        }
        t += 1;
    }
}

/// Writes any `n >= 0` as exactly `h` elements of the basis.
pub fn theorem_decompose(basis: &ShatBasis, n: &Nat) -> Decomposition {
    let h = basis.h();
    if *n <= basis.params().interval_end() {
        return Decomposition::padded(n.clone(), h);
    }
    let t = find_t(basis, n).expect("n is beyond the initial interval");
    let stratum = basis.stratum(t);
    let v = lemma3_decompose(&stratum.row, n, &stratum.upper)
        .expect("stratum bounds satisfy the solver preconditions");
    let terms = stratum
        .row
        .cofactors
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
    let dec = Decomposition { n: n.clone(), terms };
    debug_assert!(dec.terms.iter().all(|t| basis.member(&t.element)));
    dec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shatrovskii::ShatParams;
    use alloc::vec;
    use proptest::prelude::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().copied().map(n).collect()
    }

    fn example2() -> ShatBasis {
        ShatBasis::new(ShatParams::new(2, nats(&[1, 2]), Some(n(1)), Some(n(3))).unwrap())
    }

    fn example3() -> ShatBasis {
        ShatBasis::new(ShatParams::new(3, nats(&[1, 2, 3]), Some(n(2)), Some(n(4))).unwrap())
    }

    fn row_k3() -> SchemeRow {
        example2().params().scheme_row(&n(3)).unwrap()
    }

    #[test]
    fn lemma3_examples() {
        let row = row_k3();
        assert_eq!(lemma3_decompose(&row, &n(23), &n(40)).unwrap(), nats(&[3, 2]));
        assert_eq!(lemma3_decompose(&row, &n(21), &n(40)).unwrap(), nats(&[1, 4]));
        assert!(matches!(lemma3_decompose(&row, &n(20), &n(40)), Err(Error::Domain(_))));
        assert!(matches!(lemma3_decompose(&row, &n(41), &n(40)), Err(Error::Domain(_))));
    }

    #[test]
    fn lemma3_matches_exhaustive_search() {
        let row = row_k3();
        for m in 21..=520u64 {
            let mut found = Vec::new();
            for v1 in 0..4u64 {
                let rest = m - 5 * v1;
                if rest % 4 == 0 {
                    found.push(vec![n(v1), n(rest / 4)]);
                }
            }
            assert_eq!(found.len(), 1, "n = {m}");
            assert_eq!(lemma3_decompose(&row, &n(m), &n(520)).unwrap(), found[0]);
        }
    }

    #[test]
    fn find_t_examples() {
        let b = example2();
        assert_eq!(find_t(&b, &n(23)).unwrap(), 1);
        assert_eq!(find_t(&b, &n(380)).unwrap(), 1);
        assert_eq!(find_t(&b, &n(381)).unwrap(), 2);
        assert!(find_t(&b, &n(20)).is_err());
    }

    #[test]
    fn theorem_decompose_examples() {
        let b = example2();
        let d = theorem_decompose(&b, &n(7));
        assert_eq!(d.terms, vec![Term::plain(n(7)), Term::zero()]);

        let d = theorem_decompose(&b, &n(23));
        assert_eq!(
            d.terms,
            vec![
                Term { element: n(15), factor: Some((n(5), n(3))) },
                Term { element: n(8), factor: Some((n(4), n(2))) },
            ]
        );
        assert!(d.terms.iter().all(|t| b.member(&t.element)));

        let d = theorem_decompose(&b, &n(0));
        assert_eq!(d.terms, vec![Term::zero(), Term::zero()]);
    }

    #[test]
    fn covers_small_range_exactly() {
        for b in [example2(), example3()] {
            for m in 0..=20_000u64 {
                let d = theorem_decompose(&b, &n(m));
                assert_eq!(d.terms.len(), b.h());
                assert!(d.is_consistent());
                assert!(d.terms.iter().all(|t| b.member(&t.element)), "n = {m}");
            }
        }
    }

    proptest! {
        #[test]
        fn lemma3_bounds_hold(k in 1u64..60, extra in 1u64..1_000_000, slack in 0u64..1_000_000) {
            let b = example3();
            let row = b.params().scheme_row(&n(k)).unwrap();
            let m = &row.product * 2u32 + extra;
            let limit = &m + slack;
            let v = lemma3_decompose(&row, &m, &limit).unwrap();
            prop_assert_eq!(row.cofactors.iter().zip(&v).map(|(a, x)| a * x).sum::<Nat>(), m);
            for (i, vi) in v.iter().enumerate() {
                prop_assert!(*vi <= &limit / &row.cofactors[i]);
                if i < 2 {
                    prop_assert!(*vi < row.moduli[i]);
                }
            }
            prop_assert!(!v[2].is_zero());
        }

        #[test]
        fn large_n_round_trip(m in 0u64..=1_000_000_000_000) {
            for b in [example2(), example3()] {
                let d = theorem_decompose(&b, &n(m));
                prop_assert_eq!(d.terms.len(), b.h());
                prop_assert!(d.is_consistent());
                for t in &d.terms {
                    prop_assert!(b.member(&t.element));
                }
            }
        }
    }
}
