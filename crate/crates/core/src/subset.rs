//! Subsets of the ground set `{1,…,n}` packed into a single machine word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set supported by the packed representation.
pub const MAX_N: usize = 64;

/// A subset of `{1,…,64}`; element `i` is stored in bit `i − 1`.
///
/// The derived `Ord` is not used: subsets order canonically by size first and
/// then lexicographically on their ascending element lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{i}` for a 1-based element `i`.
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_N).contains(&i));
        Subset(1u64 << (i - 1))
    }

    /// All of `{1,…,n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        if n == MAX_N {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    /// Builds a subset from 1-based elements; `None` if any element is 0 or
    /// exceeds [`MAX_N`].
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Option<Self> {
        let mut bits = 0u64;
        for i in elements {
            if i == 0 || i > MAX_N {
                return None;
            }
            bits |= 1u64 << (i - 1);
        }
        Some(Subset(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_N).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1u64 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << (i - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Membership word as a bit string of length `n`, most significant
    /// element (`n`) first.
    pub fn to_bitstring(self, n: usize) -> String {
        (1..=n)
            .rev()
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Inverse of [`Subset::to_bitstring`].
    pub fn from_bitstring(s: &str) -> Option<Self> {
        let n = s.len();
        if n > MAX_N {
            return None;
        }
        let mut bits = 0u64;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1u64 << (n - 1 - pos),
                '0' => {}
                _ => return None,
            }
        }
        Some(Subset(bits))
    }

    /// Canonical order: by size, then lexicographically on ascending elements.
    pub fn canonical_cmp(self, other: Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }

    /// Integer key of the canonical order. Among sets of equal size the
    /// lexicographically smaller one owns the lowest element of the symmetric
    /// difference, i.e. has the larger bit-reversed mask.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), !self.0.reverse_bits())
    }
}

/// Iterator over the elements of a [`Subset`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// Wrapper giving [`Subset`] its canonical total order, for sorting and
/// ordered collections.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Canonical(pub Subset);

impl Ord for Canonical {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.canonical_cmp(other.0)
    }
}

impl PartialOrd for Canonical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.elements().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_elements(elements.iter().copied())
            .ok_or_else(|| serde::de::Error::custom(format!("elements out of range: {elements:?}")))
    }
}
