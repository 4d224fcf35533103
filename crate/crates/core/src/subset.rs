//! Ground sets and one-word subsets.
//!
//! A [`GroundSet`] is an ordered list of distinct point labels; a point is
//! identified by its position. A [`Subset`] is a bitmask over those positions,
//! so carriers are capped at [`MAX_POINTS`] points.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest carrier a [`GroundSet`] may hold.
pub const MAX_POINTS: usize = 64;

/// Largest carrier on which a structure may be materialized explicitly.
pub const MATERIALIZE_LIMIT: usize = 16;

/// A set of point indices packed into one machine word.
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

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_POINTS);
        Subset(1u64 << index)
    }

    /// The subset `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, index: usize) -> bool {
        index < MAX_POINTS && self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> Self {
        Subset(self.0 | 1u64 << index)
    }

    pub fn without(self, index: usize) -> Self {
        Subset(self.0 & !(1u64 << index))
    }

    pub const fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub const fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub const fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest index in the subset.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True iff every index is below `n`.
    pub const fn fits(self, n: usize) -> bool {
        n >= MAX_POINTS || self.0 >> n == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Canonical order: cardinality first, then lexicographic order of the
    /// increasing index lists.
    pub fn canonical_cmp(self, other: Subset) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(*other)
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

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::from_indices(iter)
    }
}

/// Iterator over the indices of a [`Subset`].
#[derive(Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
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

impl ExactSizeIterator for Indices {}

/// Iterator over every subset of a mask (Gosper-free submask walk).
#[derive(Clone)]
pub struct SubsetsOf {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Subset(current))
    }
}

/// Sorts a family canonically and removes duplicates.
pub fn normalize_family(family: &mut Vec<Subset>) {
    family.sort_unstable();
    family.dedup();
}

/// The carrier of a space: distinct labels, index = position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_POINTS {
            return Err(Error::SizeGuard {
                what: "ground set",
                limit: MAX_POINTS,
                actual: labels.len(),
            });
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if seen.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn shared(self) -> Arc<GroundSet> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Carrier-mismatch check for a subset.
    pub fn check(&self, subset: Subset) -> Result<()> {
        if subset.fits(self.len()) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!(
                "subset {subset:?} exceeds a carrier of {} points",
                self.len()
            )))
        }
    }

    /// Subset named by labels; unknown labels are an error.
    pub fn subset_of_labels<'a, I>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels.into_iter().try_fold(Subset::EMPTY, |acc, label| {
            self.index_of(label)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
        })
    }

    pub fn labels_of(&self, subset: Subset) -> Vec<&str> {
        subset.iter().map(|i| self.label(i)).collect()
    }

    /// `{a b c}` rendering used in reports and diagnostics.
    pub fn format_subset(&self, subset: Subset) -> String {
        format!("{{{}}}", self.labels_of(subset).join(" "))
    }

    /// `{a,b,c}`: a whitespace-free name for a subset, used as a point label
    /// when subsets become points (leaves, power-space members).
    pub fn subset_label(&self, subset: Subset) -> String {
        format!("{{{}}}", self.labels_of(subset).join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}
