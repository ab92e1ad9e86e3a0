//! Fixed-width bitsets over the carrier of a finite hyperring.

use std::fmt;

/// Largest carrier a [`ElementSet`] can index.
pub const MAX_CARRIER: usize = 64;

/// A subset of a finite carrier `{0, .., width-1}`, stored as one machine word.
///
/// Iteration and every derived ordering follow carrier order, so anything
/// computed from an `ElementSet` is deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    width: u8,
}

impl ElementSet {
    pub fn empty(width: usize) -> Self {
        assert!(
            width <= MAX_CARRIER,
            "carrier of {width} elements exceeds {MAX_CARRIER}"
        );
        ElementSet {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.bits = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        s
    }

    pub fn singleton(width: usize, x: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(x);
        s
    }

    pub fn from_bits(width: usize, bits: u64) -> Self {
        let full = Self::full(width);
        assert!(
            bits & !full.bits == 0,
            "bits outside a carrier of width {width}"
        );
        ElementSet {
            bits,
            width: width as u8,
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(width: usize, elements: I) -> Self {
        let mut s = Self::empty(width);
        for x in elements {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.width() && self.bits >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(
            x < self.width(),
            "element {x} outside carrier of width {}",
            self.width
        );
        let fresh = !self.contains(x);
        self.bits |= 1 << x;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) -> bool {
        let present = self.contains(x);
        self.bits &= !(1u64 << x);
        present
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        self.same_width(other);
        ElementSet {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        self.same_width(other);
        ElementSet {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        self.same_width(other);
        ElementSet {
            bits: self.bits & !other.bits,
            width: self.width,
        }
    }

    pub fn complement(&self) -> Self {
        Self::full(self.width()).difference(self)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_width(other);
        self.bits & !other.bits == 0
    }

    /// Smallest member in carrier order.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter { bits: self.bits }
    }

    fn same_width(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "combining sets over carriers of different size"
        );
    }
}

/// Serialized as the sorted list of member indices.
impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by width, then by the bitmask read as an integer.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.width, self.bits).cmp(&(other.width, other.bits))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter {
    bits: u64,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_set_of_width_64() {
        let s = ElementSet::full(64);
        assert_eq!(s.len(), 64);
        assert!(s.contains(63));
        assert!(s.complement().is_empty());
    }

    #[test]
    fn iteration_is_in_carrier_order() {
        let s = ElementSet::from_elements(8, [5, 1, 7, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        assert_eq!(s.first(), Some(1));
    }

    #[test]
    #[should_panic(expected = "different size")]
    fn mixing_widths_panics() {
        let _ = ElementSet::empty(3).union(&ElementSet::empty(4));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_bit_logic(a in 0u64..256, b in 0u64..256) {
            let x = ElementSet::from_bits(8, a);
            let y = ElementSet::from_bits(8, b);
            prop_assert_eq!(x.union(&y).bits(), a | b);
            prop_assert_eq!(x.intersection(&y).bits(), a & b);
            prop_assert_eq!(x.is_subset(&y), a & !b == 0);
            prop_assert_eq!(x.iter().count(), x.len());
        }
    }
}
