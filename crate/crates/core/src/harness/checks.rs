use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::GroupSpec;
use crate::cycles::CycleType;
use crate::graphs::{element_graph, expanded_graph, graph_equal, Relation};
use crate::group::PermGroup;
use crate::numtheory::{prime_divisors, prime_of_prime_power};
use crate::structure::{
    self, coset_action, generated, minimal_non_nilpotent_of, normal_closure, p_core_of,
    pair_nilpotent, sylow_subgroup,
};
use crate::symcomb::{construct_long_cycle_pair, long_cycle_prime, search_odd_centralizer_real};
use crate::table::GroupTable;
use crate::Permutation;

use super::scan::{table_is_nonabelian_simple, GroupContext};
use super::{table_or_skip, CheckId, Outcome, VerdictReport, WitnessItem};

pub(crate) fn dispatch(ctx: &GroupContext, check: CheckId) -> VerdictReport {
    ctx.take_pair_count();
    let mut report = match check {
        CheckId::PropertyStar => property_star(ctx),
        CheckId::SolvableCriterion => thm_solvable(ctx),
        CheckId::NilpotentCondition => nilpotent_condition(ctx),
        CheckId::NilpotentCriterion => thm_nilpotent(ctx),
        CheckId::NormalizingPair => normalizing_pair(ctx),
        CheckId::RealCentralizers => real_centralizers(ctx),
        CheckId::DirectFactor => direct_factor(ctx),
        CheckId::RadicalMembership => radical_membership(ctx),
        CheckId::GraphEqualities => graph_equalities(ctx),
        CheckId::MinimalNonNilpotent => minimal_non_nilpotent(ctx),
        CheckId::RadicalQuotient => radical_quotient(ctx),
        CheckId::BaerSuzuki => baer_suzuki(ctx),
        CheckId::PCoreMembership => p_core_membership(ctx),
        CheckId::TableDM11 => table_d_m11(ctx),
        CheckId::DiagonalIdentity => diagonal_identity(ctx),
    };
    report.stats.pairs = ctx.take_pair_count();
    report
}

fn skipped(ctx: &GroupContext, check: CheckId, reason: impl Into<String>) -> VerdictReport {
    VerdictReport::new(ctx.name(), check, Outcome::Skipped(reason.into()))
}

fn outcome_if(ok: bool, otherwise: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Consistent
    } else {
        Outcome::Inconsistent(otherwise())
    }
}

/// (x class, p, y class, q) over nontrivial prime-power classes with `keep(p, q)`.
fn class_pairs(ctx: &GroupContext, keep: impl Fn(u64, u64) -> bool) -> Vec<(usize, usize)> {
    let pp = ctx.prime_power_classes();
    let mut out = Vec::new();
    for &(cx, p) in &pp {
        for &(cy, q) in &pp {
            if keep(p, q) {
                out.push((cx, cy));
            }
        }
    }
    out
}

fn pair_order(t: &GroupTable, a: usize, b: usize) -> u128 {
    generated(t.degree(), &[t.element(a), t.element(b)]).order()
}

// ---- (*) property ----

/// Violations of (*): for each representative pair, some positioning is solvable and
/// another is not.
pub(crate) fn star_violations(ctx: &GroupContext) -> Vec<WitnessItem> {
    let t = ctx.table().expect("table");
    class_pairs(ctx, |p, q| p != q)
        .into_par_iter()
        .filter_map(|(cx, cy)| {
            let (mut sol, mut non, mut n) = (None, None, 0u64);
            for j in ctx.orbit_representatives(cx, cy) {
                n += 1;
                let info = ctx.pair(cx, j);
                if info.solvable {
                    sol.get_or_insert(j);
                } else {
                    non.get_or_insert(j);
                }
                if sol.is_some() && non.is_some() {
                    break;
                }
            }
            ctx.count_pairs(n);
            let (ys, yn) = (sol?, non?);
            let x = t.classes()[cx].rep_index;
            let g = t.conjugator(ys, yn).expect("same class");
            Some(
                WitnessItem::default()
                    .element("x", &t.element(x))
                    .element("y_solvable", &t.element(ys))
                    .element("y_nonsolvable", &t.element(yn))
                    .element("g", &g)
                    .order("|x|", t.element_order(x) as u128)
                    .order("|y|", t.element_order(ys) as u128)
                    .order("<x,y_solvable>", pair_order(t, x, ys))
                    .order("<x,y_nonsolvable>", pair_order(t, x, yn))
                    .note("y_nonsolvable = y_solvable^g"),
            )
        })
        .collect()
}

fn property_star(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::PropertyStar;
    if let Err(r) = table_or_skip(ctx, check) {
        return r;
    }
    let items = star_violations(ctx);
    let holds = items.is_empty();
    let outcome = if holds {
        Outcome::Consistent
    } else {
        Outcome::WitnessFound
    };
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("star_holds", holds)
}

fn thm_solvable(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::SolvableCriterion;
    if let Err(r) = table_or_skip(ctx, check) {
        return r;
    }
    let items = star_violations(ctx);
    let holds = items.is_empty();
    let solvable = ctx.is_solvable();
    let outcome = outcome_if(solvable == holds, || {
        format!("solvable = {solvable} but star-holds = {holds}")
    });
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("solvable", solvable)
        .fact("star_holds", holds)
}

// ---- commuting-conjugate condition ----

/// Representative pairs where some positioning of `y` is solvable with `x` but no
/// member of the `y`-class commutes with `x`.
pub(crate) fn commuting_condition_violations(
    ctx: &GroupContext,
    keep: impl Fn(u64, u64) -> bool,
    stop_at_first: bool,
) -> Vec<WitnessItem> {
    let t = ctx.table().expect("table");
    let mut items = Vec::new();
    for (cx, cy) in class_pairs(ctx, keep) {
        if ctx.class_meets_centralizer(cx, cy) {
            continue;
        }
        let mut n = 0u64;
        let sol = ctx.orbit_representatives(cx, cy).into_iter().find(|&j| {
            n += 1;
            ctx.pair(cx, j).solvable
        });
        ctx.count_pairs(n);
        if let Some(y) = sol {
            let x = t.classes()[cx].rep_index;
            items.push(
                WitnessItem::default()
                    .element("x", &t.element(x))
                    .element("y", &t.element(y))
                    .order("|x|", t.element_order(x) as u128)
                    .order("|y|", t.element_order(y) as u128)
                    .order("<x,y>", pair_order(t, x, y))
                    .order("|C(x)|", t.classes()[cx].centralizer_order)
                    .note("<x,y> solvable and no conjugate of y commutes with x"),
            );
            if stop_at_first {
                break;
            }
        }
    }
    items
}

fn nilpotent_condition(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::NilpotentCondition;
    if let Err(r) = table_or_skip(ctx, check) {
        return r;
    }
    let items = commuting_condition_violations(ctx, |p, q| p != q, false);
    let holds = items.is_empty();
    let outcome = if holds {
        Outcome::Consistent
    } else {
        Outcome::WitnessFound
    };
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("condition_holds", holds)
}

fn thm_nilpotent(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::NilpotentCriterion;
    if let Err(r) = table_or_skip(ctx, check) {
        return r;
    }
    let items = commuting_condition_violations(ctx, |p, q| p != q, false);
    let holds = items.is_empty();
    let nilpotent = ctx.is_nilpotent();
    let outcome = outcome_if(nilpotent == holds, || {
        format!("nilpotent = {nilpotent} but condition = {holds}")
    });
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("nilpotent", nilpotent)
        .fact("condition_holds", holds)
}

// ---- normalizing 2-element with no commuting conjugate ----

/// A pair `(x, y)` with `x` of odd prime-power order, `y` a nontrivial 2-element
/// normalizing `⟨x⟩`, and no conjugate of `y` commuting with `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizingPair {
    pub x: Permutation,
    pub y: Permutation,
    pub x_order: u64,
    pub y_order: u64,
    /// `e` with `x^y = x^e`.
    pub exponent: u64,
    pub centralizer_order: u128,
    /// `"inner"` or `"symmetric"` (conjugacy under `S_n` for alternating groups).
    pub conjugacy: &'static str,
}

/// Searches the table for a pair accepted by `accept(x_order, y_order, exponent)`,
/// trying classes of larger element order first.
/// With `symmetric_ambient`, two elements count as conjugate when their cycle types
/// agree (conjugacy in `S_n` for `A_n` in its natural action).
pub fn find_normalizing_pair(
    t: &GroupTable,
    symmetric_ambient: bool,
    accept: &dyn Fn(u64, u64, u64) -> bool,
) -> Option<NormalizingPair> {
    let class_key: Vec<CycleType> = t
        .classes()
        .iter()
        .map(|c| c.representative.cycle_type())
        .collect();
    // class index -> key index
    let key_of = |c: usize| -> usize {
        if symmetric_ambient {
            class_key.iter().position(|k| *k == class_key[c]).unwrap()
        } else {
            c
        }
    };
    // larger element orders first
    let mut order: Vec<usize> = (1..t.classes().len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(t.classes()[c].element_order));
    for c in order.into_iter().map(|c| &t.classes()[c]) {
        let xo = c.element_order;
        match prime_of_prime_power(xo) {
            Some(p) if p > 2 => {}
            _ => continue,
        }
        let x = c.rep_index;
        let xp = t.element(x);
        let powers: BTreeMap<usize, u64> = (0..xo)
            .map(|e| (t.index_of(&xp.pow(e as i64)).unwrap(), e))
            .collect();
        let present: BTreeSet<usize> = t
            .centralizer_indices(x)
            .into_iter()
            .map(|g| key_of(t.class_of(g)))
            .collect();
        for j in 1..t.len() {
            let yo = t.element_order(j);
            if !yo.is_power_of_two() || present.contains(&key_of(t.class_of(j))) {
                continue;
            }
            let y = t.element(j);
            let Some(&e) = powers.get(&t.conjugate_index(x, &y)) else {
                continue;
            };
            if accept(xo, yo, e) {
                return Some(NormalizingPair {
                    x: xp,
                    y,
                    x_order: xo,
                    y_order: yo,
                    exponent: e,
                    centralizer_order: c.centralizer_order,
                    conjugacy: if symmetric_ambient {
                        "symmetric"
                    } else {
                        "inner"
                    },
                });
            }
        }
    }
    None
}

/// An even involution inverting the standard representative of `ct` (consecutive
/// cycles), for an odd-order cycle type that is real in `A_n`.
pub fn alt_inverting_involution(ct: &CycleType) -> Option<Permutation> {
    let x = ct.representative();
    let n = x.degree();
    let cycles = x.cycles();
    let mut images: Vec<usize> = (1..=n).collect();
    for c in &cycles {
        let l = c.len();
        for i in 0..l {
            images[c[i] - 1] = c[(l - i) % l];
        }
    }
    let mut t = Permutation::from_images(&images).ok()?;
    if !t.is_even() {
        let moved: BTreeSet<usize> = cycles.iter().flatten().copied().collect();
        let fixed: Vec<usize> = (1..=n).filter(|p| !moved.contains(p)).collect();
        let fix = if fixed.len() >= 2 {
            Permutation::from_cycles(n, &[vec![fixed[0], fixed[1]]]).ok()?
        } else {
            let (a, b) = (0..cycles.len())
                .flat_map(|i| (i + 1..cycles.len()).map(move |j| (i, j)))
                .find(|&(i, j)| cycles[i].len() == cycles[j].len())?;
            let swaps: Vec<Vec<usize>> = cycles[a]
                .iter()
                .zip(&cycles[b])
                .map(|(&u, &v)| vec![u, v])
                .collect();
            Permutation::from_cycles(n, &swaps).ok()?
        };
        t = fix.then(&t);
    }
    (t.is_even() && x.conjugate_by(&t) == x.inverse()).then_some(t)
}

fn normalizing_pair(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::NormalizingPair;
    match ctx.is_nonabelian_simple() {
        Some(true) => {}
        Some(false) => return skipped(ctx, check, "not a nonabelian simple group"),
        None => return skipped(ctx, check, "simplicity undetermined without enumeration"),
    }
    let alt = ctx.spec().and_then(GroupSpec::alternating_degree);
    if let Some(t) = ctx.table() {
        let found = find_normalizing_pair(t, alt.is_some(), &|_, _, _| true);
        let mut report = match found {
            Some(pair) => {
                let item = WitnessItem::default()
                    .element("x", &pair.x)
                    .element("y", &pair.y)
                    .order("|x|", pair.x_order as u128)
                    .order("|y|", pair.y_order as u128)
                    .order("|C(x)|", pair.centralizer_order)
                    .order("exponent", pair.exponent as u128)
                    .note(format!(
                        "x^y = x^exponent; no {} conjugate of y commutes with x",
                        pair.conjugacy
                    ));
                VerdictReport::new(ctx.name(), check, Outcome::WitnessFound)
                    .with_witness(vec![item])
            }
            None => VerdictReport::new(
                ctx.name(),
                check,
                Outcome::Inconsistent("no normalizing 2-element pair exists".into()),
            ),
        };
        if matches!(ctx.spec(), Some(GroupSpec::Mathieu(_))) {
            report = report.fact(
                "limitation",
                "inner conjugacy only; outer automorphisms are not constructed",
            );
        }
        return report;
    }
    match alt {
        Some(n) => normalizing_pair_alternating(ctx, n),
        None => skipped(ctx, check, ctx.skip_reason().unwrap_or("not enumerated")),
    }
}

fn normalizing_pair_alternating(ctx: &GroupContext, n: usize) -> VerdictReport {
    let check = CheckId::NormalizingPair;
    if n == 24 || n >= 42 {
        let pair = long_cycle_prime(n).and_then(|p| construct_long_cycle_pair(n, p));
        return match pair {
            Ok(pair) if pair.verdict.holds() => {
                let item = WitnessItem::default()
                    .element("x", &pair.x)
                    .element("y", &pair.y)
                    .order("|x|", pair.p as u128)
                    .order("|y|", pair.verdict.y_order as u128)
                    .order("moved(y)", pair.verdict.moved_points as u128)
                    .note("support of y exceeds the points fixed by x");
                VerdictReport::new(ctx.name(), check, Outcome::WitnessFound)
                    .with_witness(vec![item])
            }
            Ok(_) => VerdictReport::new(
                ctx.name(),
                check,
                Outcome::Inconsistent("constructed pair fails verification".into()),
            ),
            Err(e) => skipped(ctx, check, e.to_string()),
        };
    }
    let findings = match search_odd_centralizer_real(n) {
        Ok(f) => f,
        Err(e) => return skipped(ctx, check, e.to_string()),
    };
    for f in findings {
        if let Some(y) = alt_inverting_involution(&f.cycle_type) {
            let x = f.cycle_type.representative();
            let item = WitnessItem::default()
                .element("x", &x)
                .element("y", &y)
                .order("|x|", f.order as u128)
                .order("|y|", y.order() as u128)
                .order("|C(x)|", f.centralizer_order_alt)
                .note("|C(x)| is odd, so no even 2-element centralizes x");
            return VerdictReport::new(ctx.name(), check, Outcome::WitnessFound)
                .with_witness(vec![item]);
        }
    }
    VerdictReport::new(
        ctx.name(),
        check,
        Outcome::Inconsistent("no real odd-centralizer type admits an inverting involution".into()),
    )
}

// ---- real elements with odd centralizer ----

/// Groups for which a real element of odd prime-power order with odd centralizer is not
/// claimed: M12 and `A_n` for `n = 24` or `n ≥ 42`.
fn in_exception_list(spec: Option<&GroupSpec>) -> bool {
    match spec {
        Some(GroupSpec::Mathieu(12)) => true,
        Some(GroupSpec::Alternating(n)) => *n == 24 || *n >= 42,
        _ => false,
    }
}

fn real_centralizers(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::RealCentralizers;
    let is_m12 = matches!(ctx.spec(), Some(GroupSpec::Mathieu(12)));
    let simple = ctx.is_nonabelian_simple() == Some(true);
    let excepted = in_exception_list(ctx.spec());
    if let Some(t) = ctx.table() {
        let odd_real: Vec<usize> = (0..t.classes().len())
            .filter(|&c| {
                let cl = &t.classes()[c];
                cl.centralizer_order % 2 == 1 && t.is_real(cl.rep_index)
            })
            .collect();
        let prime_power: Vec<usize> = odd_real
            .iter()
            .copied()
            .filter(|&c| {
                let o = t.classes()[c].element_order;
                o > 1 && prime_of_prime_power(o).is_some()
            })
            .collect();
        let items: Vec<WitnessItem> = prime_power
            .iter()
            .map(|&c| {
                let cl = &t.classes()[c];
                WitnessItem::default()
                    .element("x", &cl.representative)
                    .order("|x|", cl.element_order as u128)
                    .order("|C(x)|", cl.centralizer_order)
                    .note("real, odd prime-power order, odd centralizer")
            })
            .collect();
        let any_odd_real = odd_real.iter().any(|&c| c != 0);
        let outcome = if is_m12 {
            outcome_if(!any_odd_real, || {
                "M12 has a real element with odd centralizer".into()
            })
        } else if simple && !excepted && prime_power.is_empty() {
            Outcome::Inconsistent("simple group without a real odd-centralizer element".into())
        } else if prime_power.is_empty() {
            Outcome::Consistent
        } else {
            Outcome::WitnessFound
        };
        return VerdictReport::new(ctx.name(), check, outcome)
            .with_witness(items)
            .fact("real_odd_centralizer_nontrivial", any_odd_real)
            .fact("real_odd_centralizer_prime_power", !prime_power.is_empty());
    }
    let Some(n) = ctx.spec().and_then(GroupSpec::alternating_degree) else {
        return skipped(ctx, check, ctx.skip_reason().unwrap_or("not enumerated"));
    };
    let findings = match search_odd_centralizer_real(n) {
        Ok(f) => f,
        Err(e) => return skipped(ctx, check, e.to_string()),
    };
    let items: Vec<WitnessItem> = findings
        .iter()
        .map(|f| {
            WitnessItem::default()
                .element("x", &f.cycle_type.representative())
                .order("|x|", f.order as u128)
                .order("|C(x)|", f.centralizer_order_alt)
                .note(format!("cycle type {}", f.cycle_type))
        })
        .collect();
    let outcome = if n >= 42 {
        if items.is_empty() {
            Outcome::Consistent
        } else {
            Outcome::WitnessFound
        }
    } else if excepted {
        outcome_if(items.is_empty(), || {
            format!("A_{n} has an odd-centralizer real type")
        })
    } else if items.is_empty() {
        Outcome::Inconsistent(format!("A_{n} has no odd-centralizer real type"))
    } else {
        Outcome::WitnessFound
    };
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("real_odd_centralizer_prime_power", !findings.is_empty())
}

// ---- Sylow 2-subgroup as a direct factor ----

fn direct_factor(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::DirectFactor;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let items = commuting_condition_violations(ctx, |p, q| p != 2 && q == 2, true);
    if !items.is_empty() {
        return VerdictReport::new(
            ctx.name(),
            check,
            Outcome::Skipped("hypothesis fails".into()),
        )
        .with_witness(items)
        .fact("hypothesis", false);
    }
    let g = ctx.group();
    let order = g.order();
    let p = if order % 2 == 0 {
        match sylow_subgroup(g, 2, ctx.config().cap) {
            Ok(p) => p,
            Err(e) => return skipped(ctx, check, e.to_string()),
        }
    } else {
        PermGroup::trivial(g.degree())
    };
    let p_normal = p
        .generators()
        .iter()
        .all(|h| g.generators().iter().all(|s| p.has(&h.conjugate_by(s))));
    let odd = (0..t.len()).filter(|&i| t.element_order(i) % 2 == 1);
    let k = t.subgroup_from_indices(odd, u128::MAX);
    let ok = p_normal && k.order() % 2 == 1 && p.order() * k.order() == order;
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(ok, || "Sylow 2-subgroup is not a direct factor".into()),
    )
    .fact("hypothesis", true)
    .fact("sylow2_order", p.order() as u64)
    .fact("odd_part_order", k.order() as u64)
}

// ---- radical membership ----

fn radical_membership(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::RadicalMembership;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let radical = match ctx.radical() {
        Ok(r) => r.clone(),
        Err(e) => return skipped(ctx, check, e),
    };
    let pp = ctx.prime_power_classes();
    let xs: Vec<(usize, u64)> = pp
        .iter()
        .copied()
        .filter(|&(c, p)| p >= 5 && t.classes()[c].element_order == p)
        .collect();
    let results: Vec<(usize, Option<(usize, usize, usize)>)> = xs
        .par_iter()
        .map(|&(cx, p)| {
            let failure = pp
                .iter()
                .filter(|&&(cy, r)| r != p && t.classes()[cy].element_order == r)
                .find_map(|&(cy, _)| {
                    let (mut sol, mut non, mut n) = (None, None, 0u64);
                    for j in ctx.orbit_representatives(cx, cy) {
                        n += 1;
                        if ctx.pair(cx, j).solvable {
                            sol.get_or_insert(j);
                        } else {
                            non.get_or_insert(j);
                        }
                        if sol.is_some() && non.is_some() {
                            break;
                        }
                    }
                    ctx.count_pairs(n);
                    Some((cy, sol?, non?))
                });
            (cx, failure)
        })
        .collect();
    let mut items = Vec::new();
    let mut bad = Vec::new();
    for (cx, failure) in results {
        let x = &t.classes()[cx].representative;
        let item = WitnessItem::default().element("x", x);
        match failure {
            Some((_, ys, yn)) => items.push(
                item.element("y_solvable", &t.element(ys))
                    .element("y_nonsolvable", &t.element(yn))
                    .note("hypothesis fails"),
            ),
            None => {
                let inside = radical.has(x);
                if !inside {
                    bad.push(x.to_string());
                }
                items.push(item.order("|R(G)|", radical.order()).note(if inside {
                    "hypothesis holds; x in R(G)"
                } else {
                    "hypothesis holds; x not in R(G)"
                }));
            }
        }
    }
    let outcome = outcome_if(bad.is_empty(), || {
        format!("outside the radical: {}", bad.join(", "))
    });
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(items)
        .fact("radical_order", radical.order() as u64)
}

// ---- graph equalities ----

fn graph_equalities(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::GraphEqualities;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    if t.order() > ctx.config().graph_order_cap {
        return skipped(
            ctx,
            check,
            format!(
                "order {} exceeds the graph cap {}",
                t.order(),
                ctx.config().graph_order_cap
            ),
        );
    }
    let built = (|| {
        let solvable = element_graph(t, Relation::Solvable)?;
        let exp_s = expanded_graph(t, Relation::Solvable)?;
        let exp_n = expanded_graph(t, Relation::Nilpotent)?;
        Ok::<_, crate::graphs::GraphError>((
            graph_equal(&exp_s, &solvable)?,
            graph_equal(&exp_s, &exp_n)?,
        ))
    })();
    let (scc_eq_solvable, scc_eq_ncc) = match built {
        Ok(v) => v,
        Err(e) => return skipped(ctx, check, e.to_string()),
    };
    ctx.count_pairs((t.len() * t.len()) as u64);
    let (s, n) = (ctx.is_solvable(), ctx.is_nilpotent());
    let outcome = outcome_if(scc_eq_solvable == s && scc_eq_ncc == n, || {
        format!(
            "solvable = {s}, expanded SCC = solvable graph: {scc_eq_solvable}; \
             nilpotent = {n}, expanded SCC = expanded NCC: {scc_eq_ncc}"
        )
    });
    VerdictReport::new(ctx.name(), check, outcome)
        .fact("solvable", s)
        .fact("nilpotent", n)
        .fact("expanded_scc_eq_solvable_graph", scc_eq_solvable)
        .fact("expanded_scc_eq_expanded_ncc", scc_eq_ncc)
}

// ---- minimal non-nilpotent groups and the quotient by the radical ----

/// Pairs `(x, y)` of coprime prime-power order that do not generate the group and
/// have no commuting conjugate positioning.
fn minimal_non_nilpotent_violation(ctx: &GroupContext) -> Option<WitnessItem> {
    let t = ctx.table().expect("table");
    for (cx, cy) in class_pairs(ctx, |p, q| p != q) {
        if ctx.class_meets_centralizer(cx, cy) {
            continue;
        }
        let mut n = 0u64;
        let found = ctx.orbit_representatives(cx, cy).into_iter().find(|&j| {
            n += 1;
            !ctx.pair(cx, j).generates
        });
        ctx.count_pairs(n);
        if let Some(y) = found {
            let x = t.classes()[cx].rep_index;
            return Some(
                WitnessItem::default()
                    .element("x", &t.element(x))
                    .element("y", &t.element(y))
                    .order("<x,y>", pair_order(t, x, y))
                    .note("x, y do not generate and no conjugate of y commutes with x"),
            );
        }
    }
    None
}

fn minimal_non_nilpotent(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::MinimalNonNilpotent;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    if ctx.is_nilpotent() {
        return skipped(ctx, check, "group is nilpotent");
    }
    let mnn = minimal_non_nilpotent_of(t);
    let violation = minimal_non_nilpotent_violation(ctx);
    let condition = violation.is_none();
    let outcome = outcome_if(mnn == condition, || {
        format!("minimal non-nilpotent = {mnn} but pair condition = {condition}")
    });
    VerdictReport::new(ctx.name(), check, outcome)
        .with_witness(violation.into_iter().collect())
        .fact("minimal_non_nilpotent", mnn)
        .fact("pair_condition", condition)
}

/// A non-generating pair whose `y`-class has no solvable positioning with `x`.
fn radical_quotient_violation(ctx: &GroupContext) -> Option<WitnessItem> {
    let t = ctx.table().expect("table");
    let pairs = class_pairs(ctx, |p, q| p != q);
    pairs.into_par_iter().find_map_first(|(cx, cy)| {
        let mut nongen = None;
        let mut n = 0u64;
        for j in ctx.orbit_representatives(cx, cy) {
            n += 1;
            let info = ctx.pair(cx, j);
            if info.solvable {
                ctx.count_pairs(n);
                return None;
            }
            if !info.generates {
                nongen.get_or_insert(j);
            }
        }
        ctx.count_pairs(n);
        let y = nongen?;
        let x = t.classes()[cx].rep_index;
        Some(
            WitnessItem::default()
                .element("x", &t.element(x))
                .element("y", &t.element(y))
                .order("<x,y>", pair_order(t, x, y))
                .note("x, y do not generate and no positioning of y is solvable with x"),
        )
    })
}

fn radical_quotient(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::RadicalQuotient;
    if let Err(r) = table_or_skip(ctx, check) {
        return r;
    }
    if ctx.is_solvable() {
        return skipped(ctx, check, "group is solvable");
    }
    if let Some(item) = radical_quotient_violation(ctx) {
        return VerdictReport::new(
            ctx.name(),
            check,
            Outcome::Skipped("hypothesis fails".into()),
        )
        .with_witness(vec![item])
        .fact("hypothesis", false);
    }
    let radical = match ctx.radical() {
        Ok(r) => r.clone(),
        Err(e) => return skipped(ctx, check, e),
    };
    let g = ctx.group();
    let (quotient, via) = if radical.is_trivial() {
        (g.clone(), "radical trivial; quotient is G")
    } else {
        match coset_action(g, &radical, ctx.config().degree_cap) {
            Ok(q) => (q, "coset action on R(G)"),
            Err(e) => return skipped(ctx, check, e.to_string()),
        }
    };
    let qt = match GroupTable::new(&quotient, ctx.config().cap) {
        Ok(t) => t,
        Err(e) => return skipped(ctx, check, e.to_string()),
    };
    let simple = table_is_nonabelian_simple(&qt);
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(simple, || "G/R(G) is not nonabelian simple".into()),
    )
    .fact("hypothesis", true)
    .fact("quotient_order", quotient.order() as u64)
    .fact("quotient_via", via)
}

// ---- Baer–Suzuki and the p-core ----

fn baer_suzuki(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::BaerSuzuki;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let g = ctx.group();
    let results: Vec<(usize, bool, Option<usize>)> = (1..t.classes().len())
        .into_par_iter()
        .map(|c| {
            let x = &t.classes()[c].representative;
            let closure = normal_closure(g, std::slice::from_ref(x)).expect("x in G");
            let lhs = structure::is_nilpotent(&closure);
            let mut n = 0u64;
            let bad = t.class_members(c).iter().map(|&j| j as usize).find(|&j| {
                n += 1;
                !pair_nilpotent(x, &t.element(j))
            });
            ctx.count_pairs(n);
            (c, lhs, bad)
        })
        .collect();
    let mut items = Vec::new();
    let mut mismatched = Vec::new();
    for (c, lhs, bad) in results {
        let x = &t.classes()[c].representative;
        if lhs != bad.is_none() {
            mismatched.push(x.to_string());
        }
        if let Some(j) = bad {
            let y = t.element(j);
            items.push(
                WitnessItem::default()
                    .element("x", x)
                    .element("x^g", &y)
                    .order("<x,x^g>", generated(t.degree(), &[x.clone(), y]).order())
                    .note(if lhs {
                        ""
                    } else {
                        "<x^G> and <x,x^g> both non-nilpotent"
                    }),
            );
        }
    }
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(mismatched.is_empty(), || {
            format!("mismatch at {}", mismatched.join(", "))
        }),
    )
    .with_witness(items)
}

fn p_core_membership(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::PCoreMembership;
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let pp = ctx.prime_power_classes();
    let mut items = Vec::new();
    let mut bad = Vec::new();
    let mut held = 0u64;
    for p in prime_divisors(t.order()).into_iter().filter(|&p| p > 2) {
        let core = match p_core_of(t, p) {
            Ok(c) => c,
            Err(e) => return skipped(ctx, check, e.to_string()),
        };
        let xs: Vec<usize> = pp
            .iter()
            .filter(|&&(_, q)| q == p)
            .map(|&(c, _)| c)
            .collect();
        let verdicts: Vec<(usize, bool)> = xs
            .par_iter()
            .map(|&cx| {
                let x = &t.classes()[cx].representative;
                let mut n = 0u64;
                let hyp = (0..t.classes().len()).all(|cy| {
                    ctx.orbit_representatives(cx, cy).into_iter().any(|j| {
                        n += 1;
                        pair_nilpotent(x, &t.element(j))
                    })
                });
                ctx.count_pairs(n);
                (cx, hyp)
            })
            .collect();
        for (cx, hyp) in verdicts {
            if !hyp {
                continue;
            }
            held += 1;
            let x = &t.classes()[cx].representative;
            let inside = core.has(x);
            if !inside {
                bad.push(x.to_string());
            }
            items.push(
                WitnessItem::default()
                    .element("x", x)
                    .order("p", p as u128)
                    .order("|O_p(G)|", core.order())
                    .note(if inside {
                        "hypothesis holds; x in O_p(G)"
                    } else {
                        "hypothesis holds; x not in O_p(G)"
                    }),
            );
        }
    }
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(bad.is_empty(), || {
            format!("outside O_p: {}", bad.join(", "))
        }),
    )
    .with_witness(items)
    .fact("hypotheses_held", held)
}

// ---- pairs of orders (2, q) ----

/// Outcome of scanning every pair `(x, y)` with `|x| = p_order`, `|y| = q_order`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TableDScan {
    pub pairs: u64,
    pub solvable_pairs: u64,
    pub subgroup_orders: BTreeSet<u128>,
    pub solvable_example: Option<(Permutation, Permutation)>,
}

/// `x` over class representatives of order `p_order`, `y` over every element of order
/// `q_order`.
pub fn table_d_scan(t: &GroupTable, p_order: u64, q_order: u64) -> TableDScan {
    let mut scan = TableDScan::default();
    let ys: Vec<usize> = (0..t.len())
        .filter(|&j| t.element_order(j) == q_order)
        .collect();
    for c in t.classes().iter().filter(|c| c.element_order == p_order) {
        let results: Vec<(u128, bool, usize)> = ys
            .par_iter()
            .map(|&j| {
                let h = generated(t.degree(), &[c.representative.clone(), t.element(j)]);
                (h.order(), structure::is_solvable(&h), j)
            })
            .collect();
        for (order, solvable, j) in results {
            scan.pairs += 1;
            scan.subgroup_orders.insert(order);
            if solvable {
                scan.solvable_pairs += 1;
                if scan.solvable_example.is_none() {
                    scan.solvable_example = Some((c.representative.clone(), t.element(j)));
                }
            }
        }
    }
    scan
}

fn table_d_m11(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::TableDM11;
    if !matches!(ctx.spec(), Some(GroupSpec::Mathieu(11))) {
        return skipped(ctx, check, "applies to M:11 only");
    }
    let t = match table_or_skip(ctx, check) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let scan = table_d_scan(t, 2, 11);
    ctx.count_pairs(scan.pairs);
    let allowed: BTreeSet<u128> = [660, 7920].into();
    let ok = scan.pairs > 0 && scan.solvable_pairs == 0 && scan.subgroup_orders.is_subset(&allowed);
    let orders: Vec<u64> = scan.subgroup_orders.iter().map(|&o| o as u64).collect();
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(ok, || {
            format!("orders {orders:?}, {} solvable pairs", scan.solvable_pairs)
        }),
    )
    .fact("subgroup_orders", orders)
    .fact("solvable_pairs", scan.solvable_pairs)
}

// ---- diagonal conjugation identity ----

fn random_element(s: &PermGroup, rng: &mut ChaCha8Rng) -> Permutation {
    let gens = s.generators();
    let mut g = s.identity();
    if gens.is_empty() {
        return g;
    }
    for _ in 0..4 * (s.degree() + 8) {
        let h = &gens[rng.gen_range(0..gens.len())];
        g = if rng.gen_bool(0.5) {
            g.then(h)
        } else {
            g.then(&h.inverse())
        };
    }
    g
}

/// Runs `trials` random instances of the diagonal identity in `S^k` and returns the
/// number of failures. For `g = (u₁,…,u_k)σ` and `y = (b,…,b)`, the identity is
/// `g y g⁻¹ = (u₁ b u₁⁻¹, …, u_k b u_k⁻¹)` with products read left to right.
pub fn diagonal_identity_trials(s: &PermGroup, k: usize, trials: usize, seed: u64) -> usize {
    let n = s.degree();
    let degree = n * k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift = |p: &Permutation, block: usize| p.shifted(block * n, degree);
    let mut failures = 0;
    for trial in 0..trials {
        let b = random_element(s, &mut rng);
        let us: Vec<Permutation> = (0..k).map(|_| random_element(s, &mut rng)).collect();
        let mut sigma: Vec<usize> = (0..k).collect();
        // the first trial keeps sigma trivial
        if trial > 0 {
            sigma.shuffle(&mut rng);
        }
        let mut images = vec![0usize; degree];
        for (block, &target) in sigma.iter().enumerate() {
            for p in 0..n {
                images[block * n + p] = target * n + p + 1;
            }
        }
        let sigma = Permutation::from_images(&images).expect("block permutation");
        let u = us
            .iter()
            .enumerate()
            .fold(Permutation::identity(degree), |acc, (i, ui)| {
                acc.then(&shift(ui, i))
            });
        let g = u.then(&sigma);
        let y = (0..k).fold(Permutation::identity(degree), |acc, i| {
            acc.then(&shift(&b, i))
        });
        let lhs = g.then(&y).then(&g.inverse());
        let rhs = us
            .iter()
            .enumerate()
            .fold(Permutation::identity(degree), |acc, (i, ui)| {
                acc.then(&shift(&ui.then(&b).then(&ui.inverse()), i))
            });
        if lhs != rhs {
            failures += 1;
        }
    }
    failures
}

fn diagonal_identity(ctx: &GroupContext) -> VerdictReport {
    let check = CheckId::DiagonalIdentity;
    const TRIALS: usize = 20;
    let failures = diagonal_identity_trials(ctx.group(), 2, TRIALS, 0x5eed);
    ctx.count_pairs(TRIALS as u64);
    VerdictReport::new(
        ctx.name(),
        check,
        outcome_if(failures == 0, || {
            format!("{failures} of {TRIALS} trials failed")
        }),
    )
    .fact("k", 2)
    .fact("trials", TRIALS)
}
