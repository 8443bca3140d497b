//! Enumerated groups: every element stored in canonical order, with element orders,
//! inverses and the conjugacy-class partition.
//!
//! Elements live in one flat `u16` buffer sorted lexicographically, so an element is
//! identified by its index and looked up by binary search.

use std::cmp::Ordering;

use serde::Serialize;

use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;

/// A conjugacy class of an enumerated group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Least element of the class in canonical order.
    pub representative: Permutation,
    /// Index of the representative in the table.
    pub rep_index: usize,
    pub size: usize,
    pub element_order: u64,
    pub centralizer_order: u128,
}

/// All elements of a group, with class data.
#[derive(Debug, Clone)]
pub struct GroupTable {
    group: PermGroup,
    degree: usize,
    len: usize,
    data: Vec<u16>,
    orders: Vec<u32>,
    inverses: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    // members of class c are class_members[class_offsets[c]..class_offsets[c + 1]]
    class_offsets: Vec<usize>,
    class_members: Vec<u32>,
    // BFS tree for conjugator tracing: element = parent ^ gens[parent_gen]
    parent: Vec<u32>,
    parent_gen: Vec<u8>,
    gens: Vec<Permutation>,
}

const NO_PARENT: u32 = u32::MAX;

impl GroupTable {
    /// Enumerates `group` and computes its conjugacy classes.
    pub fn new(group: &PermGroup, cap: u128) -> Result<Self, GroupError> {
        let elements = group.enumerate(cap)?;
        let degree = group.degree();
        let len = elements.len();
        let mut data = Vec::with_capacity(len * degree);
        for e in &elements {
            data.extend_from_slice(e.raw());
        }
        drop(elements);
        let mut table = Self {
            group: group.clone(),
            degree,
            len,
            data,
            orders: Vec::new(),
            inverses: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            class_offsets: Vec::new(),
            class_members: Vec::new(),
            parent: Vec::new(),
            parent_gen: Vec::new(),
            gens: group.nontrivial_generators(),
        };
        table.orders = (0..len).map(|i| table.element(i).order() as u32).collect();
        table.inverses = (0..len)
            .map(|i| {
                let inv = table.element(i).inverse();
                table
                    .index_of_raw(inv.raw())
                    .expect("closed under inverses") as u32
            })
            .collect();
        table.compute_classes()?;
        Ok(table)
    }

    fn compute_classes(&mut self) -> Result<(), GroupError> {
        let n = self.degree;
        let gen_invs: Vec<Permutation> = self.gens.iter().map(|g| g.inverse()).collect();
        let mut class_of = vec![u32::MAX; self.len];
        let mut parent = vec![NO_PARENT; self.len];
        let mut parent_gen = vec![0u8; self.len];
        // raw classes in order of discovery; the first element of each is its least member
        let mut raw_classes: Vec<Vec<u32>> = Vec::new();
        let mut buf = vec![0u16; n];
        for start in 0..self.len {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = raw_classes.len() as u32;
            class_of[start] = cid;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = members[head] as usize;
                head += 1;
                for (gi, (g, gi_inv)) in self.gens.iter().zip(&gen_invs).enumerate() {
                    // x^g = g⁻¹ x g, so (x^g)(i) = g(x(g⁻¹(i)))
                    let xs = self.images_raw(x);
                    let (g, ginv) = (g.raw(), gi_inv.raw());
                    for i in 0..n {
                        buf[i] = g[xs[ginv[i] as usize] as usize];
                    }
                    let y = self.index_of_raw(&buf).ok_or_else(|| {
                        GroupError::Internal("conjugate outside the enumerated group".into())
                    })?;
                    if class_of[y] == u32::MAX {
                        class_of[y] = cid;
                        parent[y] = x as u32;
                        parent_gen[y] = gi as u8;
                        members.push(y as u32);
                    }
                }
            }
            members.sort_unstable();
            raw_classes.push(members);
        }
        let order = self.len as u128;
        let mut keyed: Vec<(u32, usize, u32, usize)> = raw_classes
            .iter()
            .enumerate()
            .map(|(c, m)| (self.orders[m[0] as usize], m.len(), m[0], c))
            .collect();
        keyed.sort_unstable();
        let mut remap = vec![0u32; raw_classes.len()];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut offsets = vec![0usize];
        let mut all_members = Vec::with_capacity(self.len);
        for (new_id, &(ord, size, rep, old)) in keyed.iter().enumerate() {
            remap[old] = new_id as u32;
            classes.push(ConjugacyClass {
                representative: self.element(rep as usize),
                rep_index: rep as usize,
                size,
                element_order: ord as u64,
                centralizer_order: order / size as u128,
            });
            all_members.extend_from_slice(&raw_classes[old]);
            offsets.push(all_members.len());
        }
        for c in class_of.iter_mut() {
            *c = remap[*c as usize];
        }
        if classes.iter().any(|c| order % c.size as u128 != 0) {
            return Err(GroupError::Internal(
                "class size does not divide |G|".into(),
            ));
        }
        self.class_of = class_of;
        self.classes = classes;
        self.class_offsets = offsets;
        self.class_members = all_members;
        self.parent = parent;
        self.parent_gen = parent_gen;
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The group order as a `u128`.
    pub fn order(&self) -> u128 {
        self.len as u128
    }

    fn images_raw(&self, i: usize) -> &[u16] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation::from_raw(self.images_raw(i).to_vec())
    }

    fn index_of_raw(&self, images: &[u16]) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.images_raw(mid).cmp(images) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Index of `p`, or `None` if it is not an element.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        self.index_of_raw(p.raw())
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i] as u64
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// Index of the product `a` then `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.images_raw(a), self.images_raw(b));
        let prod: Vec<u16> = x.iter().map(|&i| y[i as usize]).collect();
        self.index_of_raw(&prod).expect("closed under products")
    }

    /// Index of `x^g` for an element `g` of the group.
    pub fn conjugate_index(&self, x: usize, g: &Permutation) -> usize {
        let c = self.element(x).conjugate_by(g);
        self.index_of_raw(c.raw())
            .expect("closed under conjugation")
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.images_raw(a), self.images_raw(b));
        (0..self.degree).all(|i| x[y[i] as usize] == y[x[i] as usize])
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    /// Sorted element indices of class `c`.
    pub fn class_members(&self, c: usize) -> &[u32] {
        &self.class_members[self.class_offsets[c]..self.class_offsets[c + 1]]
    }

    /// Indices into the nontrivial generators, `g_1, …, g_k`, with
    /// `x = rep^{g_1 ⋯ g_k}` where `rep` is the representative of `x`'s class.
    pub fn conjugation_path(&self, x: usize) -> Vec<usize> {
        let mut steps = Vec::new();
        let mut cur = x;
        while self.parent[cur] != NO_PARENT {
            steps.push(self.parent_gen[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        steps.reverse();
        steps
    }

    /// An element `g` with `rep^g = x`, where `rep` is the representative of `x`'s class.
    pub fn conjugator_from_rep(&self, x: usize) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for gi in self.conjugation_path(x) {
            g = g.then(&self.gens[gi]);
        }
        g
    }

    /// An element `g` with `x^g = y`, if `x` and `y` are conjugate.
    pub fn conjugator(&self, x: usize, y: usize) -> Option<Permutation> {
        if self.class_of(x) != self.class_of(y) {
            return None;
        }
        let gx = self.conjugator_from_rep(x);
        let gy = self.conjugator_from_rep(y);
        Some(gx.inverse().then(&gy))
    }

    /// Whether `x` is conjugate to its inverse.
    pub fn is_real(&self, x: usize) -> bool {
        self.class_of(x) == self.class_of(self.inverse_index(x))
    }

    /// Indices of the elements commuting with `x`.
    pub fn centralizer_indices(&self, x: usize) -> Vec<usize> {
        (0..self.len).filter(|&g| self.commute(x, g)).collect()
    }

    /// The centralizer of `x` as a generated group.
    pub fn centralizer(&self, x: usize) -> PermGroup {
        let target = self.order() / self.classes[self.class_of(x)].size as u128;
        self.subgroup_from_indices(self.centralizer_indices(x).into_iter(), target)
    }

    /// Subgroup generated by the given elements, stopping once `target` is reached.
    pub(crate) fn subgroup_from_indices<I: Iterator<Item = usize>>(
        &self,
        elements: I,
        target: u128,
    ) -> PermGroup {
        let mut chain = crate::chain::StabilizerChain::trivial(self.degree);
        let mut gens = Vec::new();
        for i in elements {
            if chain.order() >= target {
                break;
            }
            let g = self.element(i);
            if chain.extend(&g) {
                gens.push(g);
            }
        }
        PermGroup::from_chain(gens, chain)
    }
}
