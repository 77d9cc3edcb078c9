//! Dense fixed-universe bit sets.
//!
//! The enumeration core is intersection-bound, so sets over a context's
//! object or attribute range are stored as packed `u64` blocks. The total
//! order implemented by [`Ord`] is the *lectic* order used throughout:
//! `a < b` iff the smallest index where the two sets differ belongs to `b`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

const BITS: usize = u64::BITS as usize;

#[inline]
fn div_rem(i: usize) -> (usize, usize) {
    (i / BITS, i % BITS)
}

/// A subset of `{0, .., universe-1}` packed into `u64` blocks.
///
/// Bits at or beyond `universe` are kept zero; every operation preserves
/// that invariant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    /// The empty subset of a `universe`-element range.
    pub fn empty(universe: usize) -> Self {
        BitSet {
            universe,
            blocks: vec![0; universe.div_ceil(BITS)],
        }
    }

    /// The full subset `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for b in &mut s.blocks {
            *b = u64::MAX;
        }
        s.mask_tail();
        s
    }

    /// Builds a set from indices. Returns `None` if any index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Option<Self> {
        let mut s = Self::empty(universe);
        for i in indices {
            if i >= universe {
                return None;
            }
            s.insert(i);
        }
        Some(s)
    }

    /// Interprets the low bits of `word` as a subset. Requires `universe <= 64`.
    pub fn from_word(universe: usize, word: u64) -> Self {
        debug_assert!(universe <= BITS);
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.blocks[0] = word;
        }
        s.mask_tail();
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let (blk, bit) = div_rem(i);
        self.blocks[blk] & (1 << bit) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "bit {} outside universe {}", i, self.universe);
        let (blk, bit) = div_rem(i);
        self.blocks[blk] |= 1 << bit;
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.universe, "bit {} outside universe {}", i, self.universe);
        let (blk, bit) = div_rem(i);
        self.blocks[blk] &= !(1 << bit);
    }

    fn mask_tail(&mut self) {
        let rem = self.universe % BITS;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1 << rem) - 1;
            }
        } else if self.universe == 0 {
            self.blocks.clear();
        }
    }

    #[inline]
    fn check_same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "bit sets drawn from different universes"
        );
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_same_universe(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same_universe(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    /// Removes every element of `other` from `self`.
    pub fn subtract(&mut self, other: &Self) {
        self.check_same_universe(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for b in &mut s.blocks {
            *b = !*b;
        }
        s.mask_tail();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// Drops every element at or above `limit`.
    pub fn keep_below(&mut self, limit: usize) {
        let limit = limit.min(self.universe);
        let (blk, bit) = div_rem(limit);
        for (i, b) in self.blocks.iter_mut().enumerate() {
            if i > blk {
                *b = 0;
            } else if i == blk {
                *b &= if bit == 0 { 0 } else { (1 << bit) - 1 };
            }
        }
    }

    /// Compares the restrictions of both sets to `{0, .., limit-1}`.
    pub fn eq_below(&self, other: &Self, limit: usize) -> bool {
        self.check_same_universe(other);
        let limit = limit.min(self.universe);
        let (blk, bit) = div_rem(limit);
        for i in 0..self.blocks.len() {
            let mask = if i < blk {
                u64::MAX
            } else if i == blk && bit != 0 {
                (1 << bit) - 1
            } else {
                0
            };
            if (self.blocks[i] ^ other.blocks[i]) & mask != 0 {
                return false;
            }
        }
        true
    }

    /// Lectic comparison: the smaller set is the one missing the smallest
    /// index where the two differ.
    pub fn lectic_cmp(&self, other: &Self) -> Ordering {
        self.check_same_universe(other);
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if b & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// A uniformly random subset of the universe.
    pub fn random(universe: usize, rng: &mut impl rand_core::RngCore) -> Self {
        let mut s = Self::empty(universe);
        for b in &mut s.blocks {
            *b = rng.next_u64();
        }
        s.mask_tail();
        s
    }

    /// A uniformly random subset of `self`.
    pub fn random_subset(&self, rng: &mut impl rand_core::RngCore) -> Self {
        let mut s = self.clone();
        for b in &mut s.blocks {
            *b &= rng.next_u64();
        }
        s
    }

    pub fn iter(&self) -> Indices<'_> {
        Indices {
            set: self,
            block: 0,
            word: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl core::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.lectic_cmp(other))
    }
}

/// Iterator over the indices present in a [`BitSet`], ascending.
pub struct Indices<'a> {
    set: &'a BitSet,
    block: usize,
    word: u64,
}

impl Iterator for Indices<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word == 0 {
            self.block += 1;
            if self.block >= self.set.blocks.len() {
                return None;
            }
            self.word = self.set.blocks[self.block];
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.block * BITS + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = BitSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(65));
        assert_eq!(s.indices(), vec![0, 64, 129]);
    }

    #[test]
    fn full_respects_tail() {
        let s = BitSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.complement().len(), 0);
        assert_eq!(BitSet::full(0).len(), 0);
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_indices(10, [1, 3, 5]).unwrap();
        let b = BitSet::from_indices(10, [3, 5, 7]).unwrap();
        assert_eq!(a.intersection(&b).indices(), vec![3, 5]);
        assert_eq!(a.union(&b).indices(), vec![1, 3, 5, 7]);
        assert_eq!(a.difference(&b).indices(), vec![1]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.difference(&b).is_disjoint(&b));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(BitSet::from_indices(3, [3]).is_none());
        assert!(BitSet::from_indices(0, [0]).is_none());
    }

    #[test]
    fn keep_and_compare_below() {
        let mut s = BitSet::from_indices(130, [2, 63, 64, 100]).unwrap();
        let t = s.clone();
        s.keep_below(64);
        assert_eq!(s.indices(), vec![2, 63]);
        assert!(s.eq_below(&t, 64));
        assert!(!s.eq_below(&t, 65));
    }

    #[test]
    fn lectic_order_examples() {
        let empty = BitSet::empty(4);
        let m = BitSet::full(4);
        let a0 = BitSet::from_indices(4, [0]).unwrap();
        let a1 = BitSet::from_indices(4, [1]).unwrap();
        // the smallest differing element decides: {1} < {0} < {0,1,2,3}
        assert!(empty < a1);
        assert!(a1 < a0);
        assert!(a0 < m);
        assert_eq!(a0.lectic_cmp(&a0), Ordering::Equal);
    }

    #[test]
    #[should_panic(expected = "different universes")]
    fn universe_mismatch_panics() {
        let a = BitSet::empty(3);
        let b = BitSet::empty(4);
        let _ = a.is_subset(&b);
    }
}
