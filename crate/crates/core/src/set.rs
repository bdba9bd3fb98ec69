use std::fmt;

use smallvec::SmallVec;

use crate::error::{invalid, Result};
use crate::group::{Elem, Group};

type Words = SmallVec<[u64; 2]>;

/// A subset of a specific group, stored as a bitset over dense element indices.
#[derive(Clone)]
pub struct GSubset {
    group: Group,
    words: Words,
    len: usize,
}

impl GSubset {
    pub fn empty(group: &Group) -> GSubset {
        let n = group.order().div_ceil(64);
        GSubset {
            group: group.clone(),
            words: SmallVec::from_elem(0, n),
            len: 0,
        }
    }

    pub fn full(group: &Group) -> GSubset {
        let mut s = GSubset::empty(group);
        for e in group.elements() {
            s.insert(e);
        }
        s
    }

    pub fn singleton(group: &Group, x: Elem) -> GSubset {
        let mut s = GSubset::empty(group);
        s.insert(x);
        s
    }

    /// Build from dense indices; out-of-range indices are rejected.
    pub fn from_indices<I>(group: &Group, indices: I) -> Result<GSubset>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = GSubset::empty(group);
        for i in indices {
            s.insert(group.elem(i)?);
        }
        Ok(s)
    }

    pub fn from_elems<I>(group: &Group, elems: I) -> GSubset
    where
        I: IntoIterator<Item = Elem>,
    {
        let mut s = GSubset::empty(group);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Subset whose membership is the low `order` bits of `mask` (groups of order ≤ 64).
    pub fn from_mask(group: &Group, mask: u64) -> GSubset {
        debug_assert!(group.order() <= 64);
        let mask = if group.order() == 64 { mask } else { mask & ((1u64 << group.order()) - 1) };
        let mut words: Words = SmallVec::from_elem(0, 1);
        words[0] = mask;
        GSubset {
            group: group.clone(),
            words,
            len: mask.count_ones() as usize,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let i = x.index();
        i < self.group.order() && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns true if the element was newly inserted.
    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        let i = x.index();
        let bit = 1u64 << (i & 63);
        let w = &mut self.words[i >> 6];
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: Elem) -> bool {
        let i = x.index();
        let bit = 1u64 << (i & 63);
        let w = &mut self.words[i >> 6];
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().map(Elem::index).collect()
    }

    pub fn to_elems(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn same_group(&self, other: &GSubset) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(invalid!(
                "subsets belong to different groups ({} vs {})",
                self.group.label(),
                other.group.label()
            ))
        }
    }

    fn zip_words(&self, other: &GSubset, f: impl Fn(u64, u64) -> u64) -> GSubset {
        let words: Words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        GSubset {
            group: self.group.clone(),
            words,
            len,
        }
    }

    pub fn union(&self, other: &GSubset) -> GSubset {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GSubset) -> GSubset {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GSubset) -> GSubset {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> GSubset {
        GSubset::full(&self.group).difference(self)
    }

    pub fn is_subset(&self, other: &GSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &GSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }

    /// `x + self`.
    pub fn translate(&self, x: Elem) -> GSubset {
        GSubset::from_elems(&self.group, self.iter().map(|a| self.group.add(a, x)))
    }

    /// `-self`.
    pub fn negate(&self) -> GSubset {
        GSubset::from_elems(&self.group, self.iter().map(|a| self.group.neg(a)))
    }

    /// Low word of the bitset, for enumeration code over groups of order ≤ 64.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl PartialEq for GSubset {
    fn eq(&self, other: &GSubset) -> bool {
        self.group == other.group && self.words == other.words
    }
}

impl Eq for GSubset {}

impl fmt::Debug for GSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.group.label(), self.to_indices())
    }
}

impl fmt::Display for GSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| self.group.display_elem(e)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Elem;

    #[inline]
    fn next(&mut self) -> Option<Elem> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(Elem((self.word * 64 + bit) as u32));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a GSubset {
    type Item = Elem;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_tracks_population() {
        let g = Group::cyclic(130).unwrap();
        let mut s = GSubset::empty(&g);
        assert!(s.insert(Elem(129)));
        assert!(!s.insert(Elem(129)));
        s.insert(Elem(0));
        s.insert(Elem(64));
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_indices(), vec![0, 64, 129]);
        assert!(s.remove(Elem(64)));
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().len(), 128);
    }

    #[test]
    fn rejects_out_of_range() {
        let g = Group::cyclic(5).unwrap();
        assert!(GSubset::from_indices(&g, [5]).is_err());
    }

    #[test]
    fn set_ops() {
        let g = Group::cyclic(15).unwrap();
        let a = GSubset::from_indices(&g, [1, 2, 3]).unwrap();
        let b = GSubset::from_indices(&g, [3, 4]).unwrap();
        assert_eq!(a.union(&b).to_indices(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_indices(), vec![3]);
        assert_eq!(a.difference(&b).to_indices(), vec![1, 2]);
        assert_eq!(a.negate().to_indices(), vec![12, 13, 14]);
        assert_eq!(a.translate(Elem(13)).to_indices(), vec![0, 1, 14]);
        let other = GSubset::empty(&Group::cyclic(16).unwrap());
        assert!(a.same_group(&other).is_err());
    }
}
