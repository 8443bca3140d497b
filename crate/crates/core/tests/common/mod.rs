//! Independent oracles: brute-force scans that avoid the library's class tables and
//! reductions.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use permcheck::structure::{generated, is_solvable};
use permcheck::{PermGroup, Permutation};

/// Conjugacy classes by direct conjugation over all elements.
pub struct BruteClasses {
    pub elements: Vec<Permutation>,
    pub class_of: HashMap<Permutation, usize>,
    pub members: Vec<Vec<usize>>,
}

impl BruteClasses {
    pub fn new(g: &PermGroup) -> Self {
        let elements = g.enumerate(1_000_000).unwrap();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut class_id = vec![usize::MAX; elements.len()];
        let mut members = Vec::new();
        for i in 0..elements.len() {
            if class_id[i] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut m = Vec::new();
            for g in &elements {
                let j = index[&elements[i].conjugate_by(g)];
                if class_id[j] == usize::MAX {
                    class_id[j] = c;
                    m.push(j);
                }
            }
            members.push(m);
        }
        let class_of = elements
            .iter()
            .cloned()
            .zip(class_id.iter().copied())
            .collect();
        BruteClasses {
            elements,
            class_of,
            members,
        }
    }

    pub fn class(&self, p: &Permutation) -> usize {
        self.class_of[p]
    }
}

pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// Class pairs `(C_x, C_y)` of nontrivial prime-power elements of distinct primes
/// where some `x ∈ C_x` and two conjugates `y, y'` give `⟨x,y⟩` solvable and
/// `⟨x,y'⟩` not. Every element pair is evaluated.
pub fn full_star_violations(g: &PermGroup, bc: &BruteClasses) -> BTreeSet<(usize, usize)> {
    let n = bc.elements.len();
    let degree = g.degree();
    let primes: Vec<Option<u64>> = bc
        .elements
        .iter()
        .map(|e| prime_of_power(e.order()))
        .collect();
    let mut seen: BTreeMap<(usize, usize, usize), (bool, bool)> = BTreeMap::new();
    for x in 0..n {
        let Some(p) = primes[x] else { continue };
        for y in 0..n {
            let Some(q) = primes[y] else { continue };
            if p == q {
                continue;
            }
            let s = is_solvable(&generated(
                degree,
                &[bc.elements[x].clone(), bc.elements[y].clone()],
            ));
            let cy = bc.class(&bc.elements[y]);
            let e = seen.entry((x, cy, 0)).or_insert((false, false));
            if s {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
    }
    seen.into_iter()
        .filter(|(_, (a, b))| *a && *b)
        .map(|((x, cy, _), _)| (bc.class(&bc.elements[x]), cy))
        .collect()
}

/// Class pairs where some `⟨x,y⟩` (distinct primes) is solvable while no conjugate of
/// `y` commutes with `x`.
pub fn full_commuting_violations(g: &PermGroup, bc: &BruteClasses) -> BTreeSet<(usize, usize)> {
    let degree = g.degree();
    let mut out = BTreeSet::new();
    for (x, ex) in bc.elements.iter().enumerate() {
        let Some(p) = prime_of_power(ex.order()) else {
            continue;
        };
        for (cy, members) in bc.members.iter().enumerate() {
            let Some(q) = prime_of_power(bc.elements[members[0]].order()) else {
                continue;
            };
            if p == q {
                continue;
            }
            let some_solvable = members
                .iter()
                .any(|&y| is_solvable(&generated(degree, &[ex.clone(), bc.elements[y].clone()])));
            let some_commutes = members.iter().any(|&y| ex.commutes_with(&bc.elements[y]));
            if some_solvable && !some_commutes {
                out.insert((bc.class(&bc.elements[x]), cy));
            }
        }
    }
    out
}

/// Smallest prime dividing `q^n − 1` but no `q^k − 1` for `k < n`, by trial division.
pub fn ppd_by_trial_division(q: u64, n: u32) -> Option<u64> {
    let value = (q as u128).pow(n) - 1;
    let mut candidates = Vec::new();
    let mut m = value;
    let mut d = 2u128;
    while d * d <= m {
        if m % d == 0 {
            candidates.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        candidates.push(m);
    }
    candidates
        .into_iter()
        .find(|&l| (1..n).all(|k| ((q as u128).pow(k) - 1) % l != 0))
        .map(|l| l as u64)
}

pub fn phi6(q: i128) -> i128 {
    q * q - q + 1
}

pub fn phi12(q: i128) -> i128 {
    q.pow(4) - q * q + 1
}

pub fn phi30(q: i128) -> i128 {
    q.pow(8) + q.pow(7) - q.pow(5) - q.pow(4) - q.pow(3) + q + 1
}

/// The largest power of 2 dividing `n > 0`.
pub fn two_part(mut n: u128) -> u128 {
    let mut part = 1;
    while n % 2 == 0 {
        n /= 2;
        part *= 2;
    }
    part
}

/// Compares the harness (*) and commuting-conjugate scans with full element-pair scans.
pub fn reduction_agrees(spec: &permcheck::GroupSpec) -> Result<(), String> {
    use permcheck::harness::{run_check, CheckId, GroupContext, RunConfig};
    let ctx = GroupContext::new(spec, &RunConfig::default()).map_err(|e| e.to_string())?;
    let g = ctx.group();
    let bc = BruteClasses::new(g);
    let witness_pairs = |check: CheckId, y_key: &str| -> BTreeSet<(usize, usize)> {
        run_check(&ctx, check)
            .witness_items()
            .iter()
            .map(|w| {
                let x = Permutation::parse(&w.elements["x"], g.degree()).unwrap();
                let y = Permutation::parse(&w.elements[y_key], g.degree()).unwrap();
                (bc.class(&x), bc.class(&y))
            })
            .collect()
    };
    let star = witness_pairs(CheckId::PropertyStar, "y_solvable");
    let star_full = full_star_violations(g, &bc);
    if star != star_full {
        return Err(format!("{spec}: star scan {star:?} vs full {star_full:?}"));
    }
    let comm = witness_pairs(CheckId::NilpotentCondition, "y");
    let comm_full = full_commuting_violations(g, &bc);
    if comm != comm_full {
        return Err(format!(
            "{spec}: commuting scan {comm:?} vs full {comm_full:?}"
        ));
    }
    Ok(())
}

/// Even cycle types of degree `n`, as length lists.
pub fn even_cycle_types(n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=left.min(max)).rev() {
            cur.push(k);
            go(left - k, k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(n, n, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|t| t.iter().map(|l| l - 1).sum::<usize>() % 2 == 0)
        .collect()
}

/// Checks centralizer order, splitting, realness and the odd-centralizer search in
/// `A_n` against classes found by brute-force conjugation.
pub fn symcomb_agrees(n: usize) -> Result<(), String> {
    use permcheck::symcomb::{
        centralizer_order_alt, is_real_in_alt, search_odd_centralizer_real, splits_in_alt,
    };
    use permcheck::CycleType;
    let g = permcheck::atlas::alternating(n);
    let bc = BruteClasses::new(&g);
    let order = bc.elements.len();
    let mut by_type: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (c, m) in bc.members.iter().enumerate() {
        let mut lens = bc.elements[m[0]].cycle_lengths();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        by_type.entry(lens).or_default().push(c);
    }
    let types = even_cycle_types(n);
    if types.len() != by_type.len() {
        return Err(format!(
            "A_{n}: {} even types, {} brute types",
            types.len(),
            by_type.len()
        ));
    }
    let mut brute_odd_real = BTreeSet::new();
    for lens in types {
        let ct = CycleType::from_lengths(lens.iter().copied()).unwrap();
        let classes = by_type
            .get(&lens)
            .ok_or_else(|| format!("A_{n}: type {lens:?} missing"))?;
        let split = splits_in_alt(&ct).map_err(|e| e.to_string())?;
        if split != (classes.len() == 2) {
            return Err(format!(
                "A_{n} {ct}: split {split}, {} classes",
                classes.len()
            ));
        }
        for &c in classes {
            let rep = &bc.elements[bc.members[c][0]];
            let cent = (order / bc.members[c].len()) as u64;
            let formula = centralizer_order_alt(&ct).map_err(|e| e.to_string())?;
            if formula != cent.into() {
                return Err(format!("A_{n} {ct}: centralizer {formula} vs {cent}"));
            }
            let real = bc.class(&rep.inverse()) == c;
            if is_real_in_alt(&ct).map_err(|e| e.to_string())? != real {
                return Err(format!("A_{n} {ct}: realness mismatch"));
            }
            let o = rep.order();
            if real && cent % 2 == 1 && prime_of_power(o).is_some_and(|p| p > 2) {
                brute_odd_real.insert((o, cent as u128, ct.to_string()));
            }
        }
    }
    if n >= 5 {
        let found: BTreeSet<(u64, u128, String)> = search_odd_centralizer_real(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|f| (f.order, f.centralizer_order_alt, f.cycle_type.to_string()))
            .collect();
        if found != brute_odd_real {
            return Err(format!(
                "A_{n}: search {found:?} vs brute {brute_odd_real:?}"
            ));
        }
    }
    Ok(())
}

/// Prime powers up to `max`.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_of_power(q).is_some()).collect()
}

pub fn number_theory_agrees() -> Result<(), String> {
    use permcheck::symcomb::{cyclotomic_value, ppd, two_adic_identity_check};
    for q in prime_powers_up_to(9) {
        for n in 1..=12u32 {
            let (lib, oracle) = (ppd(q, n as u64), ppd_by_trial_division(q, n));
            if lib != oracle {
                return Err(format!("ppd({q},{n}) = {lib:?}, trial division {oracle:?}"));
            }
        }
    }
    for (q, n) in [(2, 6), (3, 2), (7, 2)] {
        if ppd(q, n).is_some() {
            return Err(format!("ppd({q},{n}) should not exist"));
        }
    }
    for q in 2..=20i128 {
        for (m, explicit) in [(6, phi6(q)), (12, phi12(q)), (30, phi30(q))] {
            let v = cyclotomic_value(m, q as u64).map(|v| v as i128);
            if v != Some(explicit) {
                return Err(format!("Phi_{m}({q}) = {v:?}, explicit {explicit}"));
            }
        }
    }
    for q in (3..=51u64).filter(|q| q % 4 == 3) {
        for n in (2..=20u64).step_by(2) {
            let lhs = two_part((q as u128).pow(n as u32) - 1);
            let rhs = two_part((q * q - 1) as u128) * two_part((n / 2) as u128);
            if lhs != rhs || two_adic_identity_check(q, n) != Some(true) {
                return Err(format!("2-adic identity fails at q={q}, n={n}"));
            }
        }
    }
    Ok(())
}

/// Default-corpus groups of order at most `max`.
pub fn corpus_up_to(max: u128) -> Vec<permcheck::GroupSpec> {
    permcheck::harness::default_corpus()
        .into_iter()
        .filter(|s| s.expected_order().is_ok_and(|o| o <= max))
        .collect()
}
