//! Fixed-length bit arrays and the shifted-OR sumset kernel.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

pub const WORD_BITS: usize = 64;

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    /// Bits at `indices`; indices `>= len` are dropped.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            if i < len {
                s.insert(i);
            }
        }
        s
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut s = Self { len, words };
        s.clear_tail();
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] & (1 << (i % WORD_BITS)) != 0
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Smallest index in `[0, len)` whose bit is clear.
    pub fn first_zero(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(wi, &w)| wi * WORD_BITS + (!w).trailing_zeros() as usize)
            .filter(|&i| i < self.len)
    }

    fn clear_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

/// `dst[w - lo] |= (src << shift)[w]` for every global word `w` in `lo..hi`.
#[inline]
fn or_shifted(dst: &mut [u64], lo: usize, hi: usize, src: &[u64], shift: usize) {
    let q = shift / WORD_BITS;
    let r = shift % WORD_BITS;
    let start = lo.max(q);
    // src word j lands in words j + q and j + q + 1
    let end = hi.min(src.len() + q + usize::from(r != 0));
    if start >= end {
        return;
    }
    if r == 0 {
        for w in start..end {
            dst[w - lo] |= src[w - q];
        }
    } else {
        let back = WORD_BITS - r;
        for w in start..end {
            let j = w - q;
            let high = if j < src.len() { src[j] << r } else { 0 };
            let low = if j >= 1 { src[j - 1] >> back } else { 0 };
            dst[w - lo] |= high | low;
        }
    }
}

/// Words `words` of `(reach + elements)` truncated to `reach.len()` bits.
///
/// Each output word depends only on `reach`, so disjoint word ranges can be
/// computed independently and concatenated.
pub fn sumset_words(reach: &BitSet, elements: &[usize], words: Range<usize>) -> Vec<u64> {
    let mut out = vec![0u64; words.len()];
    let limit = reach.len();
    for &e in elements {
        if e >= limit {
            continue;
        }
        or_shifted(&mut out, words.start, words.end, reach.words(), e);
    }
    out
}

/// `(reach + elements) ∩ [0, reach.len())`.
pub fn sumset(reach: &BitSet, elements: &[usize]) -> BitSet {
    let words = sumset_words(reach, elements, 0..words_for(reach.len()));
    BitSet::from_words(reach.len(), words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        assert_eq!(s.first_zero(), Some(0));
        for i in 0..130 {
            s.insert(i);
        }
        assert_eq!(s.first_zero(), None);
        assert_eq!(s.count_ones(), 130);
        let t = BitSet::from_indices(70, [0, 3, 64, 69, 70, 500]);
        assert_eq!(t.iter_ones().collect::<Vec<_>>(), vec![0, 3, 64, 69]);
        assert!(t.contains(64) && !t.contains(65) && !t.contains(70));
        assert_eq!(t.first_zero(), Some(1));
    }

    #[test]
    fn shift_across_word_boundaries() {
        let a = BitSet::from_indices(300, [0, 1, 63]);
        let s = sumset(&a, &[0, 64, 65, 200, 250]);
        let mut want = Vec::new();
        for x in [0usize, 1, 63] {
            for e in [0usize, 64, 65, 200, 250] {
                if x + e < 300 {
                    want.push(x + e);
                }
            }
        }
        want.sort();
        want.dedup();
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), want);
    }

    proptest! {
        #[test]
        fn windows_concatenate_to_full_result(
            xs in proptest::collection::vec(0usize..2_000, 0..60),
            es in proptest::collection::vec(0usize..2_500, 0..60),
            len in 1usize..2_000,
            cut in 0usize..40,
        ) {
            let reach = BitSet::from_indices(len, xs);
            let full = sumset(&reach, &es);
            let n = words_for(len);
            let cut = cut.min(n);
            let mut words = sumset_words(&reach, &es, 0..cut);
            words.extend(sumset_words(&reach, &es, cut..n));
            prop_assert_eq!(BitSet::from_words(len, words), full);
        }
    }
}
