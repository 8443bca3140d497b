use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};
use std::sync::OnceLock;

use crate::atlas::{self, GroupSpec};
use crate::chain::StabilizerChain;
use crate::group::PermGroup;
use crate::numtheory::prime_of_prime_power;
use crate::structure;
use crate::table::GroupTable;

use super::{HarnessError, RunConfig};

const UNKNOWN: u8 = 0;
const DONE: u8 = 1;
const GENERATES: u8 = 2;
const SOLVABLE: u8 = 4;

/// Facts about `⟨rep_c, element_j⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PairInfo {
    pub generates: bool,
    pub solvable: bool,
}

/// A corpus group prepared for checking: built, enumerated when under the cap, with a
/// shared cache of pair facts keyed by (class representative, element).
pub struct GroupContext {
    name: String,
    spec: Option<GroupSpec>,
    group: PermGroup,
    table: Option<GroupTable>,
    skip_reason: Option<String>,
    config: RunConfig,
    pair_cache: Vec<AtomicU8>,
    orbit_cache: Vec<OnceLock<Vec<u32>>>,
    pairs_scanned: AtomicU64,
    solvable: OnceLock<bool>,
    nilpotent: OnceLock<bool>,
    radical: OnceLock<Result<PermGroup, String>>,
}

impl GroupContext {
    pub fn new(spec: &GroupSpec, config: &RunConfig) -> Result<Self, HarnessError> {
        let group = atlas::build_with(spec, config.extended)?;
        Self::from_group(&spec.to_string(), Some(spec.clone()), group, config)
    }

    pub(crate) fn from_group(
        name: &str,
        spec: Option<GroupSpec>,
        group: PermGroup,
        config: &RunConfig,
    ) -> Result<Self, HarnessError> {
        let (table, skip_reason) = if group.order() <= config.cap {
            (Some(GroupTable::new(&group, config.cap)?), None)
        } else {
            let reason = format!(
                "order {} exceeds the enumeration cap {}",
                group.order(),
                config.cap
            );
            (None, Some(reason))
        };
        let classes = table.as_ref().map(|t| t.classes().len()).unwrap_or(0);
        let cache_len = table
            .as_ref()
            .map(|t| t.classes().len() * t.len())
            .unwrap_or(0);
        Ok(GroupContext {
            name: name.to_string(),
            spec,
            group,
            table,
            skip_reason,
            config: *config,
            pair_cache: (0..cache_len).map(|_| AtomicU8::new(UNKNOWN)).collect(),
            orbit_cache: (0..classes * classes).map(|_| OnceLock::new()).collect(),
            pairs_scanned: AtomicU64::new(0),
            solvable: OnceLock::new(),
            nilpotent: OnceLock::new(),
            radical: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> Option<&GroupTable> {
        self.table.as_ref()
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn skip_reason(&self) -> Option<&str> {
        self.skip_reason.as_deref()
    }

    pub fn is_solvable(&self) -> bool {
        *self
            .solvable
            .get_or_init(|| structure::is_solvable(&self.group))
    }

    pub fn is_nilpotent(&self) -> bool {
        *self
            .nilpotent
            .get_or_init(|| structure::is_nilpotent(&self.group))
    }

    /// The solvable radical, from the table.
    pub fn radical(&self) -> Result<&PermGroup, String> {
        self.radical
            .get_or_init(|| match &self.table {
                Some(t) => structure::solvable_radical_of(t).map_err(|e| e.to_string()),
                None => Err(self.skip_reason.clone().unwrap_or_default()),
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Whether the group is nonabelian simple. Uses the table when present and the
    /// spec family otherwise.
    pub fn is_nonabelian_simple(&self) -> Option<bool> {
        match &self.table {
            Some(t) => Some(table_is_nonabelian_simple(t)),
            None => match &self.spec {
                Some(GroupSpec::Alternating(n)) => Some(*n >= 5),
                Some(GroupSpec::Mathieu(_)) | Some(GroupSpec::Psl3(_)) => Some(true),
                Some(GroupSpec::Psl2(q)) => Some(*q >= 4),
                _ => None,
            },
        }
    }

    /// Counter for statistics.
    pub(crate) fn count_pairs(&self, n: u64) {
        self.pairs_scanned.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn take_pair_count(&self) -> u64 {
        self.pairs_scanned.swap(0, Ordering::Relaxed)
    }

    /// Facts about `⟨rep of class c, element j⟩`, cached.
    pub(crate) fn pair(&self, c: usize, j: usize) -> PairInfo {
        let t = self.table.as_ref().expect("pair scans need a table");
        let slot = &self.pair_cache[c * t.len() + j];
        let mut v = slot.load(Ordering::Relaxed);
        if v == UNKNOWN {
            let x = &t.classes()[c].representative;
            let gens = [x.clone(), t.element(j)];
            // a subgroup larger than half the group is the whole group
            let (generates, solvable) =
                match StabilizerChain::build_within(t.degree(), &gens, t.order() / 2) {
                    None => (true, self.is_solvable()),
                    Some(chain) => {
                        let h = PermGroup::from_chain(gens.to_vec(), chain);
                        (false, structure::is_solvable(&h))
                    }
                };
            v = DONE | if generates { GENERATES } else { 0 } | if solvable { SOLVABLE } else { 0 };
            slot.store(v, Ordering::Relaxed);
        }
        PairInfo {
            generates: v & GENERATES != 0,
            solvable: v & SOLVABLE != 0,
        }
    }

    /// Nontrivial classes of prime-power element order, with their prime.
    pub(crate) fn prime_power_classes(&self) -> Vec<(usize, u64)> {
        let t = self.table.as_ref().expect("table");
        t.classes()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| prime_of_prime_power(c.element_order).map(|p| (i, p)))
            .collect()
    }

    /// One member of each orbit of `C(x)` acting by conjugation on class `cy`, where `x`
    /// is the representative of class `cx`. Replacing `y` by `y^c` with `c ∈ C(x)`
    /// conjugates `⟨x, y⟩` by `c`, so scanning these suffices.
    pub(crate) fn orbit_representatives(&self, cx: usize, cy: usize) -> Vec<usize> {
        let t = self.table.as_ref().expect("table");
        let k = t.classes().len();
        self.orbit_cache[cx * k + cy]
            .get_or_init(|| self.compute_orbit_representatives(cx, cy))
            .iter()
            .map(|&j| j as usize)
            .collect()
    }

    fn compute_orbit_representatives(&self, cx: usize, cy: usize) -> Vec<u32> {
        let t = self.table.as_ref().expect("table");
        let x = t.classes()[cx].rep_index;
        let cgens = t.centralizer(x).nontrivial_generators();
        let members = t.class_members(cy);
        let mut seen = vec![false; members.len()];
        let mut reps = Vec::new();
        for start in 0..members.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            reps.push(members[start]);
            let mut stack = vec![members[start] as usize];
            while let Some(z) = stack.pop() {
                for g in &cgens {
                    let w = t.conjugate_index(z, g);
                    let pos = members
                        .binary_search(&(w as u32))
                        .expect("class closed under conjugation");
                    if !seen[pos] {
                        seen[pos] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reps
    }

    /// Whether some member of class `cy` commutes with the representative of `cx`.
    pub(crate) fn class_meets_centralizer(&self, cx: usize, cy: usize) -> bool {
        let t = self.table.as_ref().expect("table");
        let x = t.classes()[cx].rep_index;
        t.class_members(cy)
            .iter()
            .any(|&j| t.commute(x, j as usize))
    }
}

pub(crate) fn table_is_nonabelian_simple(t: &GroupTable) -> bool {
    let g = t.group();
    if g.order() == 1 || g.is_abelian() {
        return false;
    }
    t.classes()[1..].iter().all(|c| {
        structure::normal_closure(g, std::slice::from_ref(&c.representative))
            .map(|n| n.order() == g.order())
            .unwrap_or(false)
    })
}
