//! Permutation groups given by generators, with a lazily built stabilizer chain.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::chain::StabilizerChain;
use crate::perm::{PermError, Permutation};

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("element {0} is not in the ambient group")]
    NotInAmbient(String),
    #[error("series exceeded {0} terms")]
    SeriesTooLong(usize),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u128 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("coset action index {index} exceeds the degree cap {cap}")]
    IndexTooLarge { index: u128, cap: u128 },
    #[error("solvable radical candidate is not a subgroup (internal error)")]
    RadicalNotSubgroup,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A permutation group `⟨generators⟩` of a fixed degree.
///
/// Cloning is cheap: the generator list and chain are shared.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Arc<Vec<Permutation>>,
    chain: Arc<OnceLock<StabilizerChain>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// `⟨generators⟩`; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()).into());
            }
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        Ok(Self {
            degree,
            generators: Arc::new(generators),
            chain: Arc::new(OnceLock::new()),
        })
    }

    /// Builds a group whose chain is already known.
    pub(crate) fn from_chain(generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let degree = chain.degree();
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        Self {
            degree,
            generators: Arc::new(generators),
            chain: Arc::new(lock),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(Vec::new(), StabilizerChain::trivial(degree))
    }

    /// Parses a list of cycle-notation generators.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators with identities removed.
    pub fn nontrivial_generators(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect()
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, p.degree()).into());
        }
        Ok(self.chain().contains(p))
    }

    /// Membership for an element already known to have the right degree.
    pub fn has(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// All elements in lexicographic order of image sequences.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::CapExceeded { order, cap });
        }
        let mut els = self.chain().elements();
        els.sort_unstable();
        Ok(els)
    }

    /// Orbit of a 1-based point, as a sorted set.
    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>, GroupError> {
        if point == 0 || point > self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point - 1] = true;
        let mut queue = vec![point - 1];
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            for g in self.generators.iter() {
                let c = g.img(b);
                if !seen[c] {
                    seen[c] = true;
                    queue.push(c);
                }
            }
        }
        Ok(queue.into_iter().map(|p| p + 1).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1)
            .map(|o| o.len() == self.degree)
            .unwrap_or(false)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.has(g))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}
