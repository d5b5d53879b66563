//! Fixed-length bit-packed sets of small nonnegative integers.
//!
//! Bits beyond `len` are always zero; every mutating operation re-masks the
//! tail word.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self {
            words: vec![u64::MAX; len.div_ceil(WORD)],
            len,
        };
        s.mask_tail();
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Panics if `i >= len`.
    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `self |= src << shift`, dropping bits that land at or beyond `len`.
    pub fn or_shifted_up(&mut self, src: &BitSet, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let ws = shift / WORD;
        let bs = shift % WORD;
        for i in ws..self.words.len() {
            let j = i - ws;
            let mut v = src.words[j] << bs;
            if bs > 0 && j > 0 {
                v |= src.words[j - 1] >> (WORD - bs);
            }
            self.words[i] |= v;
        }
        self.mask_tail();
    }

    /// `self |= src >> shift`: bit `i + shift` of `src` becomes bit `i`.
    pub fn or_shifted_down(&mut self, src: &BitSet, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let ws = shift / WORD;
        let bs = shift % WORD;
        let n = src.words.len();
        for i in 0..n.saturating_sub(ws) {
            let j = i + ws;
            let mut v = src.words[j] >> bs;
            if bs > 0 && j + 1 < n {
                v |= src.words[j + 1] << (WORD - bs);
            }
            self.words[i] |= v;
        }
    }

    /// `self |= rotate(src, shift)` inside the cyclic group of order `len`.
    pub fn or_rotated(&mut self, src: &BitSet, shift: usize) {
        let shift = shift % self.len.max(1);
        if shift == 0 {
            self.union_with(src);
            return;
        }
        self.or_shifted_up(src, shift);
        self.or_shifted_down(src, self.len - shift);
    }

    /// Closes the set under adding `step`, truncated at `len`: afterwards
    /// `x` in the set and `x + step < len` imply `x + step` in the set.
    pub fn close_under_step(&mut self, step: usize) {
        if step == 0 || step >= self.len {
            return;
        }
        if step >= WORD {
            // Ascending in place: source words lie strictly below the
            // destination and are already closed.
            let ws = step / WORD;
            let bs = step % WORD;
            for i in ws..self.words.len() {
                let j = i - ws;
                let mut v = self.words[j] << bs;
                if bs > 0 && j > 0 {
                    v |= self.words[j - 1] >> (WORD - bs);
                }
                self.words[i] |= v;
            }
            self.mask_tail();
        } else {
            // Doubling: after shifts step, 2·step, …, 2^(j-1)·step every
            // multiple below 2^j·step is reachable.
            let mut shift = step;
            while shift < self.len {
                self.shl_or_assign(shift);
                shift *= 2;
            }
        }
    }

    /// `self |= self << shift` using the pre-update contents.
    fn shl_or_assign(&mut self, shift: usize) {
        let ws = shift / WORD;
        let bs = shift % WORD;
        for i in (ws..self.words.len()).rev() {
            let j = i - ws;
            let mut v = self.words[j] << bs;
            if bs > 0 && j > 0 {
                v |= self.words[j - 1] >> (WORD - bs);
            }
            self.words[i] |= v;
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(len: usize, ones: &[usize]) -> Vec<bool> {
        let mut v = vec![false; len];
        for &i in ones {
            v[i] = true;
        }
        v
    }

    fn to_vec(s: &BitSet) -> Vec<bool> {
        (0..s.len()).map(|i| s.contains(i)).collect()
    }

    #[test]
    fn full_masks_tail() {
        let s = BitSet::full(70);
        assert_eq!(s.count_ones(), 70);
        assert!(s.is_full());
        assert!(!s.contains(70));
    }

    #[test]
    fn iter_ones_matches_inserts() {
        let s = BitSet::from_indices(200, [0, 63, 64, 127, 199]);
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 199]);
    }

    proptest! {
        #[test]
        fn rotation_matches_naive(len in 1usize..300, ones in prop::collection::vec(0usize..300, 0..20), shift in 0usize..600) {
            let ones: Vec<usize> = ones.into_iter().filter(|&i| i < len).collect();
            let src = BitSet::from_indices(len, ones.iter().copied());
            let mut dst = BitSet::new(len);
            dst.or_rotated(&src, shift);
            let mut expect = vec![false; len];
            for (i, &b) in naive(len, &ones).iter().enumerate() {
                if b {
                    expect[(i + shift) % len] = true;
                }
            }
            prop_assert_eq!(to_vec(&dst), expect);
        }

        #[test]
        fn step_closure_matches_naive(len in 1usize..400, ones in prop::collection::vec(0usize..400, 1..6), step in 1usize..150) {
            let ones: Vec<usize> = ones.into_iter().filter(|&i| i < len).collect();
            let mut s = BitSet::from_indices(len, ones.iter().copied());
            s.close_under_step(step);
            let mut expect = naive(len, &ones);
            for x in 0..len {
                if expect[x] && x + step < len {
                    expect[x + step] = true;
                }
            }
            prop_assert_eq!(to_vec(&s), expect);
        }
    }
}
