//! Base and strong generating set via deterministic Schreier–Sims.
//!
//! Base points are chosen as the smallest point moved by the first generator that fixes
//! every existing base point. Strong generators are added incrementally, so a chain can be
//! grown one generator at a time (used by normal closures and centralizers).

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    // transversal[β] maps the base point to β; transversal_inv holds the inverses.
    transversal: Vec<Option<Permutation>>,
    transversal_inv: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut level = Self {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            transversal_inv: vec![None; degree],
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        if self.orbit.is_empty() {
            let id = Permutation::identity(degree);
            self.transversal[self.base_point] = Some(id.clone());
            self.transversal_inv[self.base_point] = Some(id);
            self.orbit.push(self.base_point);
        }
        // Existing transversal entries stay valid when generators are added, so the
        // orbit is only extended.
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.img(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal_inv[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

/// A stabilizer chain `G = G₀ ≥ G₁ ≥ … ≥ G_k = 1` with orbit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Chain of the trivial group.
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            levels: Vec::new(),
        }
    }

    /// Builds a complete chain for `⟨gens⟩`. All generators must have degree `degree`.
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = Self::trivial(degree);
        let mut added = false;
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() {
                continue;
            }
            chain.insert_strong_generator(g.clone());
            added = true;
        }
        if added {
            chain.complete_from(chain.levels.len() - 1);
        }
        chain
    }

    /// Builds the chain of `⟨gens⟩` unless its order turns out to exceed `limit`, in
    /// which case `None` is returned as soon as that is certain. The product of the
    /// current orbit lengths never exceeds the final order, so it serves as the test.
    pub fn build_within(degree: usize, gens: &[Permutation], limit: u128) -> Option<Self> {
        let mut chain = Self::trivial(degree);
        let mut added = false;
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() {
                continue;
            }
            chain.insert_strong_generator(g.clone());
            added = true;
        }
        if added && !chain.complete_within(chain.levels.len() - 1, limit) {
            return None;
        }
        Some(chain)
    }

    /// Adds `g` to the group, returning `false` if it was already a member.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if self.contains(g) {
            return false;
        }
        self.insert_strong_generator(g.clone());
        let top = self.levels.len() - 1;
        self.complete_from(top);
        true
    }

    fn insert_strong_generator(&mut self, g: Permutation) {
        // Make sure g moves some base point, then place it on every level whose
        // predecessors' base points it fixes.
        if self
            .levels
            .iter()
            .all(|l| g.img(l.base_point) == l.base_point)
        {
            let p = g.first_moved().expect("non-identity") - 1;
            self.levels.push(Level::new(self.degree, p));
        }
        for l in 0..self.levels.len() {
            self.levels[l].gens.push(g.clone());
            self.levels[l].recompute(self.degree);
            let bp = self.levels[l].base_point;
            if g.img(bp) != bp {
                break;
            }
        }
    }

    fn complete_from(&mut self, start: usize) {
        self.complete_within(start, u128::MAX);
    }

    fn orbit_product(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Completes the chain; returns `false` early once the order exceeds `limit`.
    fn complete_within(&mut self, start: usize, limit: u128) -> bool {
        if self.orbit_product() > limit {
            return false;
        }
        let mut i = start as isize;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            for &beta in &orbit {
                let ngens = self.levels[lvl].gens.len();
                for gi in 0..ngens {
                    let level = &self.levels[lvl];
                    let s = &level.gens[gi];
                    let gamma = s.img(beta);
                    let g1 = level.transversal[beta].as_ref().unwrap().then(s);
                    if &g1 == level.transversal[gamma].as_ref().unwrap() {
                        continue;
                    }
                    let schreier = g1.then(level.transversal_inv[gamma].as_ref().unwrap());
                    let (h, fail) = self.strip(schreier, lvl + 1);
                    let jump = if fail < self.levels.len() {
                        true
                    } else if !h.is_identity() {
                        let p = h.first_moved().unwrap() - 1;
                        self.levels.push(Level::new(self.degree, p));
                        true
                    } else {
                        false
                    };
                    if jump {
                        for l in lvl + 1..=fail {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].recompute(self.degree);
                        }
                        if self.orbit_product() > limit {
                            return false;
                        }
                        i = fail as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        true
    }

    /// Sifts `h` through levels `from..`; returns the residue and the index of the level
    /// where sifting stopped (`levels.len()` if it went all the way through).
    fn strip(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.img(level.base_point);
            match &level.transversal_inv[beta] {
                None => return (h, l),
                Some(ui) => h = h.then(ui),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    /// Residue of sifting `g` through the whole chain; identity iff `g` is a member.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.strip(g.clone(), 0).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, l) = self.strip(g.clone(), 0);
        l == self.levels.len() && h.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point + 1).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the transversal sizes.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Distinct strong generators over all levels.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// All elements, unsorted. The caller is responsible for bounding the order.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for a in &acc {
                for &beta in &level.orbit {
                    next.push(a.then(level.transversal[beta].as_ref().unwrap()));
                }
            }
            acc = next;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s4 = StabilizerChain::build(4, &[p("(1,2)", 4), p("(1,2,3,4)", 4)]);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.base(), vec![1, 2, 3]);
        let a5 = StabilizerChain::build(5, &[p("(1,2,3,4,5)", 5), p("(3,4,5)", 5)]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&p("(1,2)", 5)));
        assert!(a5.contains(&p("(1,2)(3,4)", 5)));
        assert!(!a5.sift(&p("(1,2)", 5)).is_identity());
    }

    #[test]
    fn trivial_and_extend() {
        let mut c = StabilizerChain::build(6, &[Permutation::identity(6)]);
        assert_eq!(c.order(), 1);
        assert!(c.extend(&p("(1,2,3)", 6)));
        assert_eq!(c.order(), 3);
        assert!(!c.extend(&p("(1,3,2)", 6)));
        assert!(c.extend(&p("(4,5)", 6)));
        assert_eq!(c.order(), 6);
        assert!(c.extend(&p("(1,4)", 6)));
        assert_eq!(c.order(), 120);
    }

    #[test]
    fn elements_match_order() {
        let c = StabilizerChain::build(5, &[p("(1,2,3,4,5)", 5), p("(1,2)", 5)]);
        let mut els = c.elements();
        assert_eq!(els.len(), 120);
        els.sort();
        els.dedup();
        assert_eq!(els.len(), 120);
    }
}
