//! Fixed-size bitset for word families.

const BITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, blocks: vec![0; len.div_ceil(BITS)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet { len, blocks: vec![!0; len.div_ceil(BITS)] };
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.len % BITS;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.blocks[i / BITS] >> (i % BITS) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.blocks[i / BITS] |= 1 << (i % BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.blocks[i / BITS] &= !(1 << (i % BITS));
        }
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Number of set bits in `range`.
    pub fn count_range(&self, range: std::ops::Range<usize>) -> usize {
        range.filter(|&i| self.contains(i)).count()
    }

    fn zip(&self, other: &BitSet, f: impl Fn(u64, u64) -> u64) -> BitSet {
        assert_eq!(self.len, other.len, "bitset length mismatch");
        let mut s = BitSet {
            len: self.len,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| f(a, b)).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet { len: self.len, blocks: self.blocks.iter().map(|b| !b).collect() };
        s.clear_tail();
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        assert_eq!(self.len, other.len, "bitset length mismatch");
        self.blocks.iter().zip(&other.blocks).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(&a, &b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(bi * BITS + t)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra() {
        let mut a = BitSet::new(70);
        a.insert(1);
        a.insert(65);
        let mut b = BitSet::new(70);
        b.insert(65);
        b.insert(3);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![1, 3, 65]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![65]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(a.complement().count(), 68);
        assert_eq!(BitSet::full(70).count(), 70);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
    }
}
