//! Cycle types: multisets of cycle lengths.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{lcm, Permutation};

/// A multiset of cycle lengths summing to the degree `n`. Fixed points are parts of length 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: BTreeMap<usize, usize>,
}

impl CycleType {
    /// `None` if `lengths` is empty or contains a zero.
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Option<Self> {
        let mut parts = BTreeMap::new();
        for l in lengths {
            if l == 0 {
                return None;
            }
            *parts.entry(l).or_insert(0) += 1;
        }
        if parts.is_empty() {
            None
        } else {
            Some(Self { parts })
        }
    }

    /// From `(length, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_parts<I: IntoIterator<Item = (usize, usize)>>(parts: I) -> Option<Self> {
        let mut map = BTreeMap::new();
        for (l, m) in parts {
            if l == 0 {
                return None;
            }
            if m > 0 {
                *map.entry(l).or_insert(0) += m;
            }
        }
        if map.is_empty() {
            None
        } else {
            Some(Self { parts: map })
        }
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(l, m)| l * m).sum()
    }

    pub fn multiplicity(&self, len: usize) -> usize {
        self.parts.get(&len).copied().unwrap_or(0)
    }

    /// `(length, multiplicity)` in increasing length order.
    pub fn parts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().map(|(&l, &m)| (l, m))
    }

    /// Lengths with multiplicity, longest first.
    pub fn lengths_desc(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (&l, &m) in self.parts.iter().rev() {
            v.extend(std::iter::repeat(l).take(m));
        }
        v
    }

    pub fn num_cycles(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().map(|(l, m)| (l - 1) * m).sum::<usize>() % 2 == 0
    }

    pub fn element_order(&self) -> u64 {
        self.parts.keys().fold(1, |acc, &l| lcm(acc, l as u64))
    }

    /// A permutation of this type on consecutive points, longest cycles first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut cycles = Vec::new();
        let mut next = 1;
        for l in self.lengths_desc() {
            if l > 1 {
                cycles.push((next..next + l).collect());
            }
            next += l;
        }
        Permutation::from_cycles(n, &cycles).expect("consecutive cycles are valid")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (l, m)) in self.parts.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_invariants() {
        let ct = CycleType::from_parts([(13, 1), (1, 3)]).unwrap();
        assert_eq!(ct.degree(), 16);
        assert!(ct.is_even());
        assert_eq!(ct.element_order(), 13);
        assert_eq!(ct.representative().cycle_type(), ct);
        assert_eq!(ct.to_string(), "{13:1, 1:3}");
        assert!(!CycleType::from_parts([(2, 1), (1, 2)]).unwrap().is_even());
        assert!(CycleType::from_lengths([]).is_none());
    }
}
