//! Subsets of a finite carrier, encoded as bitmasks over element indices.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard upper bound on the number of elements of any structure.
///
/// Subsets are stored as `u64` bitmasks, so this is also the widest carrier a
/// [`Mask`] can describe.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., n-1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mask(pub u64);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    #[inline]
    pub fn singleton(x: usize) -> Mask {
        debug_assert!(x < MAX_ELEMENTS);
        Mask(1 << x)
    }

    /// The full subset `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Mask {
        if n >= 64 {
            Mask(u64::MAX)
        } else {
            Mask((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Mask {
        elems.into_iter().fold(Mask::EMPTY, |m, x| m.with(x))
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < MAX_ELEMENTS && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn with(self, x: usize) -> Mask {
        Mask(self.0 | 1 << x)
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    #[inline]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// The only element of a singleton.
    pub fn single(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    /// Image of the subset under an element map.
    pub fn map(self, f: &[usize]) -> Mask {
        self.iter().fold(Mask::EMPTY, |m, x| m.with(f[x]))
    }
}

impl IntoIterator for Mask {
    type Item = usize;
    type IntoIter = MaskIter;
    fn into_iter(self) -> MaskIter {
        self.iter()
    }
}

impl FromIterator<usize> for Mask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Mask::from_elements(iter)
    }
}

/// Ascending iterator over the elements of a [`Mask`].
#[derive(Clone)]
pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MaskIter {}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_iter() {
        let m = Mask::from_elements([3, 0, 5]);
        assert_eq!(m.to_string(), "{0,3,5}");
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(Mask::EMPTY.to_string(), "{}");
        assert_eq!(Mask::full(64).len(), 64);
        assert_eq!(Mask::full(3), Mask(0b111));
    }

    #[test]
    fn set_algebra() {
        let a = Mask::from_elements([0, 1]);
        let b = Mask::from_elements([1, 2]);
        assert_eq!(a.union(b), Mask(0b111));
        assert_eq!(a.intersection(b).single(), Some(1));
        assert!(a.intersection(b).is_subset(a));
        assert_eq!(a.difference(b), Mask::singleton(0));
        assert_eq!(a.map(&[2, 2, 0]), Mask::singleton(2));
    }
}
