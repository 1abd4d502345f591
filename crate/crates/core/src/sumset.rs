//! Finite sets of non-negative integers and the sumset arithmetic behind
//! integer additive set-labelings.
//!
//! An [`IntSet`] is a strictly ascending vector of `u64`. The empty set is
//! representable because the difference set of a singleton is empty, but every
//! operation that treats its operands as vertex labels rejects it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of non-negative integers, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntSet(Vec<u64>);

impl IntSet {
    /// Builds a set from arbitrary elements, sorting and removing duplicates.
    pub fn new<I: IntoIterator<Item = u64>>(elements: I) -> Self {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet(v)
    }

    /// Builds a set from elements that must already be strictly ascending.
    pub fn from_sorted(elements: Vec<u64>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "elements must be strictly ascending, got {elements:?}"
            )));
        }
        Ok(IntSet(elements))
    }

    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    pub fn singleton(x: u64) -> Self {
        IntSet(vec![x])
    }

    /// `{start, start + step, ..., start + (len - 1) * step}`.
    pub fn progression(start: u64, step: u64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySet);
        }
        if step == 0 && len > 1 {
            return Err(Error::InvalidSet("progression step must be positive".into()));
        }
        let mut v = Vec::with_capacity(len);
        let mut x = start;
        for i in 0..len {
            if i > 0 {
                x = x
                    .checked_add(step)
                    .ok_or_else(|| Error::Overflow(format!("progression {start}+{step}*{i}")))?;
            }
            v.push(x);
        }
        Ok(IntSet(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// Merge-walk disjointness test.
    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        IntSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    fn require_non_empty(&self) -> Result<()> {
        if self.0.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }
}

impl TryFrom<Vec<u64>> for IntSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        IntSet::from_sorted(v)
    }
}

impl From<IntSet> for Vec<u64> {
    fn from(s: IntSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[u64; N]> for IntSet {
    fn from(a: [u64; N]) -> Self {
        IntSet::new(a)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `{x + y : x ∈ a, y ∈ b}`.
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    a.require_non_empty()?;
    b.require_non_empty()?;
    let mut out = BTreeSet::new();
    for x in a.iter() {
        for y in b.iter() {
            let s = x
                .checked_add(y)
                .ok_or_else(|| Error::Overflow(format!("{x} + {y}")))?;
            out.insert(s);
        }
    }
    Ok(IntSet(out.into_iter().collect()))
}

/// Positive differences `{|x - y| : x, y ∈ a, x ≠ y}`.
///
/// Zero is never included, so a singleton has an empty difference set. With
/// zero included no two difference sets could ever be disjoint.
pub fn difference_set(a: &IntSet) -> Result<IntSet> {
    a.require_non_empty()?;
    let s = a.as_slice();
    let mut out = BTreeSet::new();
    for (i, &x) in s.iter().enumerate() {
        for &y in &s[i + 1..] {
            out.insert(y - x);
        }
    }
    Ok(IntSet(out.into_iter().collect()))
}

/// Whether `|a + b| = |a|·|b|`.
///
/// Both the cardinality criterion and the disjointness of the two difference
/// sets are evaluated; they are equivalent, and a disagreement is a bug, so it
/// panics.
pub fn is_strong_pair(a: &IntSet, b: &IntSet) -> Result<bool> {
    let by_cardinality = sumset(a, b)?.len() == a.len() * b.len();
    let by_differences = difference_set(a)?.is_disjoint(&difference_set(b)?);
    assert_eq!(
        by_cardinality, by_differences,
        "strongness criteria disagree on {a} and {b}"
    );
    Ok(by_cardinality)
}

/// Difference-set test only. Equivalent to [`is_strong_pair`] without the
/// cross-check.
pub fn is_strong_pair_fast(a: &IntSet, b: &IntSet) -> Result<bool> {
    Ok(difference_set(a)?.is_disjoint(&difference_set(b)?))
}

/// `{x + t : x ∈ a}`.
pub fn translate(a: &IntSet, t: u64) -> Result<IntSet> {
    a.require_non_empty()?;
    let v = a
        .iter()
        .map(|x| {
            x.checked_add(t)
                .ok_or_else(|| Error::Overflow(format!("{x} + {t}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntSet(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s<const N: usize>(a: [u64; N]) -> IntSet {
        IntSet::from(a)
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&s([0, 1]), &s([0, 2])).unwrap(), s([0, 1, 2, 3]));
        assert_eq!(sumset(&s([0]), &s([5, 7])).unwrap(), s([5, 7]));
        assert_eq!(sumset(&s([0, 1]), &s([2, 3])).unwrap(), s([2, 3, 4]));
    }

    #[test]
    fn sumset_rejects_empty() {
        assert_eq!(sumset(&IntSet::empty(), &s([1])), Err(Error::EmptySet));
        assert_eq!(sumset(&s([1]), &IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn sumset_overflow_is_reported() {
        let err = sumset(&s([u64::MAX]), &s([1])).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn difference_set_examples() {
        assert_eq!(difference_set(&s([5])).unwrap(), IntSet::empty());
        assert_eq!(difference_set(&s([1, 3, 4])).unwrap(), s([1, 2, 3]));
        assert_eq!(difference_set(&s([0, 2, 4])).unwrap(), s([2, 4]));
        assert_eq!(difference_set(&IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn strong_pair_examples() {
        assert!(is_strong_pair(&s([0, 1]), &s([0, 2])).unwrap());
        assert!(!is_strong_pair(&s([0, 1]), &s([2, 3])).unwrap());
        assert!(is_strong_pair(&s([7]), &s([0, 1, 2])).unwrap());
    }

    #[test]
    fn translate_examples() {
        assert_eq!(translate(&s([0, 3]), 5).unwrap(), s([5, 8]));
        assert_eq!(translate(&s([1]), 0).unwrap(), s([1]));
        let t = translate(&s([0, 2, 5]), 9).unwrap();
        assert_eq!(difference_set(&t).unwrap(), s([2, 3, 5]));
        assert!(matches!(translate(&s([1]), u64::MAX), Err(Error::Overflow(_))));
    }

    #[test]
    fn json_is_a_sorted_array() {
        let a = s([4, 0, 1]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0,1,4]");
        let back: IntSet = serde_json::from_str("[0,1,4]").unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntSet>("[1,0]").is_err());
        assert!(serde_json::from_str::<IntSet>("[1,1]").is_err());
        assert!(serde_json::from_str::<IntSet>("[-1]").is_err());
    }

    #[test]
    fn progression_builds_ap() {
        assert_eq!(IntSet::progression(3, 2, 3).unwrap(), s([3, 5, 7]));
        assert_eq!(IntSet::progression(3, 0, 1).unwrap(), s([3]));
        assert!(IntSet::progression(0, 0, 2).is_err());
    }

    #[test]
    fn strong_equivalence_on_small_subsets() {
        // Every pair of non-empty subsets of {0..5}.
        let subsets: Vec<IntSet> = (1u32..64)
            .map(|m| IntSet::new((0..6).filter(|b| m >> b & 1 == 1)))
            .collect();
        for a in &subsets {
            for b in &subsets {
                // is_strong_pair panics if the two criteria disagree.
                is_strong_pair(a, b).unwrap();
            }
        }
    }
}
