//! Structural algorithms on permutation groups: generated and normal subgroups, derived
//! and lower central series, centralizers, radicals, Sylow subgroups and coset actions.
//!
//! Subgroups are returned as [`PermGroup`]s of the ambient degree.

use rayon::prelude::*;

use crate::chain::StabilizerChain;
use crate::group::{GroupError, PermGroup};
use crate::numtheory::{is_prime, p_part, prime_divisors};
use crate::perm::Permutation;
use crate::table::{ConjugacyClass, GroupTable};

/// Default bound on series length.
pub const DEFAULT_SERIES_LIMIT: usize = 64;
/// Default bound on the degree of a coset action.
pub const DEFAULT_DEGREE_CAP: u128 = 10_000;

/// Terms of a derived or lower central series, starting with the group itself.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub terms: Vec<PermGroup>,
    /// Whether the series stabilized (at the trivial group or at a perfect term).
    pub terminated: bool,
}

impl SeriesResult {
    pub fn orders(&self) -> Vec<u128> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    /// Whether the last term is trivial.
    pub fn reaches_trivial(&self) -> bool {
        self.terms.last().is_some_and(|t| t.is_trivial())
    }
}

/// `⟨gens⟩` without any ambient check.
pub fn generated(degree: usize, gens: &[Permutation]) -> PermGroup {
    PermGroup::new(degree, gens.to_vec()).expect("generators share the degree")
}

/// `⟨elems⟩` as a subgroup of `ambient`.
pub fn generated_subgroup(
    ambient: &PermGroup,
    elems: &[Permutation],
) -> Result<PermGroup, GroupError> {
    for e in elems {
        if !ambient.contains(e)? {
            return Err(GroupError::NotInAmbient(e.to_string()));
        }
    }
    let sub = generated(ambient.degree(), elems);
    if ambient.order() % sub.order() != 0 {
        return Err(GroupError::Internal(
            "subgroup order does not divide".into(),
        ));
    }
    Ok(sub)
}

/// Closes `seeds` under conjugation by `conjugators`.
fn close_under_conjugation(
    degree: usize,
    conjugators: &[Permutation],
    seeds: &[Permutation],
) -> PermGroup {
    let mut chain = StabilizerChain::trivial(degree);
    let mut gens = Vec::new();
    let mut queue = Vec::new();
    for s in seeds {
        if chain.extend(s) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    while let Some(n) = queue.pop() {
        for g in conjugators {
            let c = n.conjugate_by(g);
            if chain.extend(&c) {
                gens.push(c.clone());
                queue.push(c);
            }
        }
    }
    PermGroup::from_chain(gens, chain)
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup, GroupError> {
    for x in s {
        if !g.contains(x)? {
            return Err(GroupError::NotInAmbient(x.to_string()));
        }
    }
    Ok(close_under_conjugation(
        g.degree(),
        &g.nontrivial_generators(),
        s,
    ))
}

fn commutators(a: &[Permutation], b: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let c = x.commutator(y);
            if !c.is_identity() {
                out.push(c);
            }
        }
    }
    out
}

/// `[G, G]`: normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.nontrivial_generators();
    let comms = commutators(&gens, &gens);
    close_under_conjugation(g.degree(), &gens, &comms)
}

/// `[N, G]` for `N` normal in `G`.
fn commutator_with(n: &PermGroup, g: &PermGroup) -> PermGroup {
    let ggens = g.nontrivial_generators();
    let comms = commutators(&n.nontrivial_generators(), &ggens);
    close_under_conjugation(g.degree(), &ggens, &comms)
}

pub fn derived_series(g: &PermGroup, max_len: usize) -> Result<SeriesResult, GroupError> {
    series(g, max_len, derived_subgroup)
}

pub fn lower_central_series(g: &PermGroup, max_len: usize) -> Result<SeriesResult, GroupError> {
    series(g, max_len, |n| commutator_with(n, g))
}

fn series(
    g: &PermGroup,
    max_len: usize,
    next: impl Fn(&PermGroup) -> PermGroup,
) -> Result<SeriesResult, GroupError> {
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let d = next(last);
        if d.order() == last.order() {
            break;
        }
        terms.push(d);
        if terms.len() > max_len {
            return Err(GroupError::SeriesTooLong(max_len));
        }
    }
    Ok(SeriesResult {
        terms,
        terminated: true,
    })
}

fn prime_power_order(order: u128) -> bool {
    order == 1 || prime_divisors(order).len() == 1
}

/// Solvability. Orders below 60 and orders with at most two prime divisors (Burnside's
/// `p^a q^b` theorem) are decided directly; otherwise the derived series is computed.
pub fn is_solvable(g: &PermGroup) -> bool {
    let mut cur = g.clone();
    loop {
        let order = cur.order();
        if order < 60 || prime_divisors(order).len() <= 2 {
            return true;
        }
        let d = derived_subgroup(&cur);
        if d.order() == order {
            return false;
        }
        cur = d;
    }
}

/// Nilpotency via the lower central series; groups of prime-power order are nilpotent.
pub fn is_nilpotent(g: &PermGroup) -> bool {
    if prime_power_order(g.order()) {
        return true;
    }
    let mut cur = g.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let next = commutator_with(&cur, g);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// Whether `⟨x, y⟩` is solvable.
pub fn pair_solvable(x: &Permutation, y: &Permutation) -> bool {
    is_solvable(&generated(x.degree(), &[x.clone(), y.clone()]))
}

/// Whether `⟨x, y⟩` is nilpotent. Elements of coprime order generate a nilpotent
/// group only when they commute.
pub fn pair_nilpotent(x: &Permutation, y: &Permutation) -> bool {
    if x.commutes_with(y) {
        return true;
    }
    if crate::perm::gcd(x.order(), y.order()) == 1 {
        return false;
    }
    is_nilpotent(&generated(x.degree(), &[x.clone(), y.clone()]))
}

/// Exact centralizer of `x` in `g`, by filtering the enumerated elements.
pub fn centralizer(g: &PermGroup, x: &Permutation, cap: u128) -> Result<PermGroup, GroupError> {
    if !g.contains(x)? {
        return Err(GroupError::NotInAmbient(x.to_string()));
    }
    let elements = g.enumerate(cap)?;
    let commuting: Vec<&Permutation> = elements.iter().filter(|e| e.commutes_with(x)).collect();
    Ok(subgroup_from(
        g.degree(),
        commuting.iter().copied(),
        commuting.len() as u128,
    ))
}

/// Builds `⟨elements⟩`, stopping early once the order reaches `target`.
fn subgroup_from<'a>(
    degree: usize,
    elements: impl Iterator<Item = &'a Permutation>,
    target: u128,
) -> PermGroup {
    let mut chain = StabilizerChain::trivial(degree);
    let mut gens = Vec::new();
    for e in elements {
        if chain.order() >= target {
            break;
        }
        if chain.extend(e) {
            gens.push(e.clone());
        }
    }
    PermGroup::from_chain(gens, chain)
}

/// Conjugacy classes sorted by (element order, size, representative).
pub fn conjugacy_classes(g: &PermGroup, cap: u128) -> Result<Vec<ConjugacyClass>, GroupError> {
    Ok(GroupTable::new(g, cap)?.classes().to_vec())
}

/// Whether `x` is conjugate in `g` to its inverse.
pub fn is_real(g: &PermGroup, x: &Permutation, cap: u128) -> Result<bool, GroupError> {
    if !g.contains(x)? {
        return Err(GroupError::NotInAmbient(x.to_string()));
    }
    let inv = x.inverse();
    if inv == *x {
        return Ok(true);
    }
    Ok(g.enumerate(cap)?.iter().any(|h| x.conjugate_by(h) == inv))
}

fn radical_like(
    table: &GroupTable,
    qualifies: impl Fn(&PermGroup) -> bool + Sync,
) -> Result<PermGroup, GroupError> {
    let g = table.group();
    let ggens = g.nontrivial_generators();
    let flags: Vec<bool> = table
        .classes()
        .par_iter()
        .map(|c| {
            let n = close_under_conjugation(g.degree(), &ggens, &[c.representative.clone()]);
            qualifies(&n)
        })
        .collect();
    let mut reps = Vec::new();
    let mut count = 0u128;
    for (c, &f) in table.classes().iter().zip(&flags) {
        if f {
            reps.push(c.representative.clone());
            count += c.size as u128;
        }
    }
    let r = close_under_conjugation(g.degree(), &ggens, &reps);
    if r.order() != count {
        return Err(GroupError::RadicalNotSubgroup);
    }
    Ok(r)
}

/// Solvable radical from an enumerated group: the union of the classes whose normal
/// closure is solvable.
pub fn solvable_radical_of(table: &GroupTable) -> Result<PermGroup, GroupError> {
    radical_like(table, is_solvable)
}

pub fn solvable_radical(g: &PermGroup, cap: u128) -> Result<PermGroup, GroupError> {
    solvable_radical_of(&GroupTable::new(g, cap)?)
}

/// Largest normal `p`-subgroup from an enumerated group.
pub fn p_core_of(table: &GroupTable, p: u64) -> Result<PermGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    radical_like(table, |n| p_part(n.order(), p) == n.order())
}

pub fn p_core(g: &PermGroup, p: u64, cap: u128) -> Result<PermGroup, GroupError> {
    p_core_of(&GroupTable::new(g, cap)?, p)
}

fn normalizes(g: &Permutation, sub: &PermGroup) -> bool {
    sub.generators().iter().all(|h| sub.has(&h.conjugate_by(g)))
}

/// `x^k` where `k` is the `p'`-part of the order of `x`: the `p`-part of `x`.
pub fn p_part_of(x: &Permutation, p: u64) -> Permutation {
    let ord = x.order() as u128;
    let pp = p_part(ord, p);
    x.pow((ord / pp) as i64)
}

/// A Sylow `p`-subgroup, grown by `p`-elements of successive normalizers.
pub fn sylow_subgroup(g: &PermGroup, p: u64, cap: u128) -> Result<PermGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let order = g.order();
    if order % p as u128 != 0 {
        return Err(GroupError::PrimeDoesNotDivide { p, order });
    }
    let target = p_part(order, p);
    let elements = g.enumerate(cap)?;
    let degree = g.degree();
    let mut chain = StabilizerChain::trivial(degree);
    let mut gens: Vec<Permutation> = Vec::new();
    while chain.order() < target {
        let current = PermGroup::from_chain(gens.clone(), chain.clone());
        let found = elements.iter().find_map(|e| {
            let ep = p_part_of(e, p);
            (!ep.is_identity() && !chain.contains(&ep) && normalizes(e, &current)).then_some(ep)
        });
        let ep = found.ok_or_else(|| {
            GroupError::Internal(format!("no p-element normalizes a non-Sylow {p}-subgroup"))
        })?;
        chain.extend(&ep);
        gens.push(ep);
    }
    Ok(PermGroup::from_chain(gens, chain))
}

/// Permutation action of `g` on the right cosets of `h`, by right multiplication.
///
/// When `h` is normal the image is checked to have order `|G:H|` (kernel exactly `h`).
pub fn coset_action(
    g: &PermGroup,
    h: &PermGroup,
    degree_cap: u128,
) -> Result<PermGroup, GroupError> {
    if !g.contains_group(h) {
        return Err(GroupError::NotInAmbient("subgroup generators".into()));
    }
    let index = g.order() / h.order();
    if index > degree_cap {
        return Err(GroupError::IndexTooLarge {
            index,
            cap: degree_cap,
        });
    }
    let h_elements = h.enumerate(u128::MAX)?;
    // canonical key of the coset H r: its least element
    let key =
        |r: &Permutation| -> Permutation { h_elements.iter().map(|x| x.then(r)).min().unwrap() };
    let gens = g.nontrivial_generators();
    let mut reps = vec![g.identity()];
    let mut keys = std::collections::HashMap::new();
    keys.insert(key(&g.identity()), 0usize);
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        for (gi, s) in gens.iter().enumerate() {
            let rs = r.then(s);
            let k = key(&rs);
            let next = keys.len();
            let idx = *keys.entry(k).or_insert_with(|| {
                reps.push(rs);
                next
            });
            images[gi].push(idx + 1);
        }
        head += 1;
    }
    if reps.len() as u128 != index {
        return Err(GroupError::Internal(
            "coset count differs from the index".into(),
        ));
    }
    let action: Vec<Permutation> = images
        .iter()
        .map(|im| Permutation::from_images(im))
        .collect::<Result<_, _>>()?;
    let image = PermGroup::new(reps.len(), action)?;
    let normal = h
        .generators()
        .iter()
        .all(|x| gens.iter().all(|s| h.has(&x.conjugate_by(s))));
    if normal && image.order() != index {
        return Err(GroupError::Internal(
            "kernel of the coset action is not H".into(),
        ));
    }
    Ok(image)
}

/// Whether `g` is not nilpotent while every proper subgroup is.
///
/// A non-nilpotent group all of whose proper subgroups are nilpotent is 2-generated, so
/// a proper non-nilpotent subgroup exists iff some proper `⟨x, y⟩` is non-nilpotent.
/// By conjugation invariance `x` ranges over class representatives only.
pub fn is_minimal_non_nilpotent(g: &PermGroup, cap: u128) -> Result<bool, GroupError> {
    if is_nilpotent(g) {
        return Ok(false);
    }
    let table = GroupTable::new(g, cap)?;
    Ok(minimal_non_nilpotent_of(&table))
}

pub fn minimal_non_nilpotent_of(table: &GroupTable) -> bool {
    let g = table.group();
    if is_nilpotent(g) {
        return false;
    }
    let order = g.order();
    !table.classes()[1..].par_iter().any(|c| {
        (0..table.len()).any(|j| {
            let y = table.element(j);
            let h = generated(g.degree(), &[c.representative.clone(), y]);
            h.order() != order && !is_nilpotent(&h)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn series_examples() {
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        let ds = derived_series(&s4, 64).unwrap();
        assert_eq!(ds.orders(), vec![24, 12, 4, 1]);
        assert!(is_solvable(&s4));
        let a5 = grp(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let ds = derived_series(&a5, 64).unwrap();
        assert_eq!(ds.orders(), vec![60]);
        assert!(ds.terminated && !ds.reaches_trivial());
        assert!(!is_solvable(&a5));
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        assert_eq!(lower_central_series(&s3, 64).unwrap().orders(), vec![6, 3]);
        assert!(!is_nilpotent(&s3));
        assert!(is_nilpotent(&grp(6, &["(1,2,3,4,5,6)"])));
        assert!(derived_series(&PermGroup::trivial(3), 64)
            .unwrap()
            .reaches_trivial());
    }

    #[test]
    fn subgroups_and_closures() {
        let a5 = grp(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let d10 = generated_subgroup(&a5, &[p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)]).unwrap();
        assert_eq!(d10.order(), 10);
        assert!(matches!(
            generated_subgroup(&a5, &[p("(1,2)", 5)]),
            Err(GroupError::NotInAmbient(_))
        ));
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(
            normal_closure(&s4, &[p("(1,2)(3,4)", 4)]).unwrap().order(),
            4
        );
        assert_eq!(normal_closure(&a5, &[p("(1,2,3)", 5)]).unwrap().order(), 60);
    }

    #[test]
    fn centralizers_radicals_sylow() {
        let a5 = grp(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        assert_eq!(
            centralizer(&a5, &p("(1,2,3,4,5)", 5), 1000)
                .unwrap()
                .order(),
            5
        );
        assert!(is_real(&a5, &p("(1,2,3,4,5)", 5), 1000).unwrap());
        assert!(solvable_radical(&a5, 1000).unwrap().is_trivial());
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(solvable_radical(&s4, 1000).unwrap().order(), 24);
        assert_eq!(p_core(&s4, 2, 1000).unwrap().order(), 4);
        assert_eq!(p_core(&s4, 3, 1000).unwrap().order(), 1);
        assert_eq!(sylow_subgroup(&s4, 2, 1000).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&a5, 5, 1000).unwrap().order(), 5);
        assert!(matches!(
            sylow_subgroup(&a5, 7, 1000),
            Err(GroupError::PrimeDoesNotDivide { .. })
        ));
    }

    #[test]
    fn coset_actions() {
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        let a4 = grp(4, &["(1,2,3)", "(2,3,4)"]);
        assert_eq!(coset_action(&s4, &a4, 100).unwrap().order(), 2);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let q = coset_action(&s4, &v4, 100).unwrap();
        assert_eq!((q.degree(), q.order()), (6, 6));
        assert!(!q.is_abelian());
        let a5 = grp(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let reg = coset_action(&a5, &PermGroup::trivial(5), 100).unwrap();
        assert_eq!((reg.degree(), reg.order()), (60, 60));
        assert!(matches!(
            coset_action(&a5, &PermGroup::trivial(5), 10),
            Err(GroupError::IndexTooLarge { .. })
        ));
    }

    #[test]
    fn minimal_non_nilpotent_examples() {
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        assert!(is_minimal_non_nilpotent(&s3, 1000).unwrap());
        let a4 = grp(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(is_minimal_non_nilpotent(&a4, 1000).unwrap());
        let s4 = grp(4, &["(1,2)", "(1,2,3,4)"]);
        assert!(!is_minimal_non_nilpotent(&s4, 1000).unwrap());
    }
}
