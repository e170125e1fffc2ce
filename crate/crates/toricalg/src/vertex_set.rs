use std::fmt;

use crate::error::{Error, Result};

/// A set of vertex labels stored as a 64-bit mask.
///
/// Labels are 1-based on the outside (matching how facets and vertices are
/// written in input files) and bit `i - 1` on the inside. Every face,
/// monomial support and color class in the crate is one of these, so set
/// algebra stays branch-free and allocation-free.
///
/// `Ord` compares the underlying masks as integers. That is the canonical
/// term order used for serializing polynomials and face lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

pub const MAX_VERTICES: usize = 64;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// Set containing the single 1-based label `index`.
    pub fn singleton(index: usize) -> Result<Self> {
        if index == 0 || index > MAX_VERTICES {
            return Err(Error::TooManyVertices(index));
        }
        Ok(VertexSet(1 << (index - 1)))
    }

    /// Collects 1-based labels, rejecting zero, duplicate, or oversized ones.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        let mut mask = 0u64;
        for index in labels {
            if index == 0 || index > MAX_VERTICES {
                return Err(Error::TooManyVertices(index));
            }
            let bit = 1 << (index - 1);
            if mask & bit != 0 {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate vertex {index}"),
                });
            }
            mask |= bit;
        }
        Ok(VertexSet(mask))
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if n == 64 {
            Ok(VertexSet(u64::MAX))
        } else {
            Ok(VertexSet((1u64 << n) - 1))
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of a 1-based label.
    pub fn contains(self, index: usize) -> bool {
        index >= 1 && index <= MAX_VERTICES && self.0 & (1 << (index - 1)) != 0
    }

    pub fn insert(self, index: usize) -> Result<Self> {
        Ok(self.union(VertexSet::singleton(index)?))
    }

    pub fn remove(self, index: usize) -> Self {
        if index == 0 || index > MAX_VERTICES {
            return self;
        }
        VertexSet(self.0 & !(1 << (index - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest 1-based label, or `None` for the empty set.
    pub fn min_label(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Largest 1-based label, or `None` for the empty set.
    pub fn max_label(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Ascending 1-based labels.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let index = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                Some(index)
            }
        })
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Shifts every label up by `offset` (used when joining two complexes).
    pub fn shift(self, offset: usize) -> Result<Self> {
        if let Some(max) = self.max_label() {
            if max + offset > MAX_VERTICES {
                return Err(Error::TooManyVertices(max + offset));
            }
        }
        Ok(VertexSet(self.0 << offset))
    }

    /// Compares as sorted label lists, element by element.
    ///
    /// Differs from the derived `Ord`: `{1,4}` precedes `{2,3}` here, while
    /// the mask order puts `{2,3}` first. Anchor choices ("lexicographically
    /// smallest face") use this order.
    pub fn cmp_labels(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    /// All subsets of `self` with exactly `size` elements, in mask order.
    pub fn subsets_of_size(self, size: usize) -> Vec<VertexSet> {
        let labels = self.labels();
        if size > labels.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut chosen = vec![0usize; size];
        fn rec(labels: &[usize], size: usize, start: usize, chosen: &mut Vec<usize>, depth: usize, out: &mut Vec<VertexSet>) {
            if depth == size {
                let mut mask = 0u64;
                for &l in chosen.iter() {
                    mask |= 1 << (l - 1);
                }
                out.push(VertexSet(mask));
                return;
            }
            for i in start..labels.len() {
                chosen[depth] = labels[i];
                rec(labels, size, i + 1, chosen, depth + 1, out);
            }
        }
        rec(&labels, size, 0, &mut chosen, 0, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, label) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}
