//! Finite subsets of a carrier, stored as bitmasks over element indices.
//!
//! Element indices follow the canonical (lexicographic) order of element
//! names, so iterating a [`Subset`] always yields members in canonical order.

use std::cmp::Ordering;
use std::fmt;

/// Largest carrier a [`Subset`] can address.
pub const MAX_WIDTH: usize = 64;

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

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_WIDTH, "subset width {n} exceeds {MAX_WIDTH}");
        if n == MAX_WIDTH {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_WIDTH);
        Subset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_WIDTH && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        self.union(Subset::singleton(i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        self.difference(Subset::singleton(i))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, in no particular but fixed order.
    pub fn submasks(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Every subset of `self`, ordered by cardinality and then
    /// lexicographically on member indices.
    pub fn subsets_by_size(self) -> BySize {
        BySize {
            members: self.iter().collect(),
            size: 0,
            picks: Some(Vec::new()),
        }
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(Subset::EMPTY, Subset::with)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Lexicographic on the ascending member sequence; a proper prefix sorts first.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // (cur - mask) & mask steps to the next submask in increasing order.
        let step = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (cur != self.mask).then_some(step);
        Some(Subset(cur))
    }
}

pub struct BySize {
    members: Vec<usize>,
    size: usize,
    picks: Option<Vec<usize>>,
}

impl Iterator for BySize {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let picks = self.picks.as_mut()?;
        let out: Subset = picks.iter().map(|&p| self.members[p]).collect();

        // Advance to the next combination of the current size, or the first
        // combination of the next size.
        let n = self.members.len();
        let k = self.size;
        let mut advanced = false;
        for pos in (0..k).rev() {
            if picks[pos] < n - k + pos {
                picks[pos] += 1;
                for later in pos + 1..k {
                    picks[later] = picks[later - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            if k == n {
                self.picks = None;
            } else {
                self.size += 1;
                *picks = (0..self.size).collect();
            }
        }
        Some(out)
    }
}
