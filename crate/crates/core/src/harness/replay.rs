//! Re-evaluates witness data from scratch.

use crate::structure::{generated, is_solvable};
use crate::symcomb::centralizer_order_alt;
use crate::Permutation;

use super::{CheckId, GroupContext, HarnessError, VerdictReport, WitnessItem};

fn fail(msg: impl Into<String>) -> HarnessError {
    HarnessError::Replay(msg.into())
}

fn elem(ctx: &GroupContext, item: &WitnessItem, name: &str) -> Result<Permutation, HarnessError> {
    let text = item
        .elements
        .get(name)
        .ok_or_else(|| fail(format!("missing element `{name}`")))?;
    let p = Permutation::parse(text, ctx.group().degree()).map_err(|e| fail(e.to_string()))?;
    if !ctx.group().has(&p) {
        return Err(fail(format!("`{name}` = {text} is not in the group")));
    }
    Ok(p)
}

fn recorded(item: &WitnessItem, name: &str) -> Result<u128, HarnessError> {
    item.orders
        .get(name)
        .copied()
        .ok_or_else(|| fail(format!("missing order `{name}`")))
}

/// Whether some conjugate of `y` commutes with `x`, from the table.
fn some_conjugate_commutes(
    ctx: &GroupContext,
    x: &Permutation,
    y: &Permutation,
    symmetric: bool,
) -> Result<bool, HarnessError> {
    if let Some(t) = ctx.table() {
        let xi = t.index_of(x).ok_or_else(|| fail("x not in table"))?;
        let yi = t.index_of(y).ok_or_else(|| fail("y not in table"))?;
        let ytype = y.cycle_type();
        return Ok(t.centralizer_indices(xi).into_iter().any(|g| {
            if symmetric {
                t.element(g).cycle_type() == ytype
            } else {
                t.class_of(g) == t.class_of(yi)
            }
        }));
    }
    if symmetric {
        // an odd centralizer in A_n holds no 2-element
        let odd = centralizer_order_alt(&x.cycle_type())
            .map(|c| c.bit(0))
            .unwrap_or(false);
        if odd && y.is_even() && y.order() > 1 && y.order().is_power_of_two() {
            return Ok(false);
        }
    }
    Err(fail("cannot decide conjugate commuting without a table"))
}

/// Replays every witness item of `report` against `ctx`, returning how many were
/// re-verified. Reports of checks without replayable witnesses return 0.
pub fn replay(report: &VerdictReport, ctx: &GroupContext) -> Result<usize, HarnessError> {
    let items = report.witness_items();
    match report.check {
        CheckId::PropertyStar | CheckId::SolvableCriterion => {
            for item in items {
                let x = elem(ctx, item, "x")?;
                let ys = elem(ctx, item, "y_solvable")?;
                let yn = elem(ctx, item, "y_nonsolvable")?;
                let g = elem(ctx, item, "g")?;
                if ys.conjugate_by(&g) != yn {
                    return Err(fail("y_nonsolvable is not y_solvable^g"));
                }
                let hs = generated(x.degree(), &[x.clone(), ys]);
                let hn = generated(x.degree(), &[x.clone(), yn]);
                if !is_solvable(&hs) || is_solvable(&hn) {
                    return Err(fail("solvability of the positionings does not replay"));
                }
                if hs.order() != recorded(item, "<x,y_solvable>")?
                    || hn.order() != recorded(item, "<x,y_nonsolvable>")?
                {
                    return Err(fail("subgroup orders do not replay"));
                }
            }
        }
        CheckId::NilpotentCondition | CheckId::NilpotentCriterion | CheckId::DirectFactor => {
            for item in items {
                let x = elem(ctx, item, "x")?;
                let y = elem(ctx, item, "y")?;
                let h = generated(x.degree(), &[x.clone(), y.clone()]);
                if !is_solvable(&h) || h.order() != recorded(item, "<x,y>")? {
                    return Err(fail("<x,y> does not replay"));
                }
                if some_conjugate_commutes(ctx, &x, &y, false)? {
                    return Err(fail("a conjugate of y commutes with x"));
                }
            }
        }
        CheckId::NormalizingPair => {
            let symmetric = ctx
                .spec()
                .and_then(crate::atlas::GroupSpec::alternating_degree)
                .is_some();
            for item in items {
                let x = elem(ctx, item, "x")?;
                let y = elem(ctx, item, "y")?;
                let yo = y.order();
                if yo < 2 || !yo.is_power_of_two() {
                    return Err(fail("y is not a nontrivial 2-element"));
                }
                let xy = x.conjugate_by(&y);
                if !(0..x.order() as i64).any(|e| x.pow(e) == xy) {
                    return Err(fail("y does not normalize <x>"));
                }
                let commutes = match some_conjugate_commutes(ctx, &x, &y, symmetric) {
                    Ok(c) => c,
                    // the support bound of the large-degree construction
                    Err(_) if y.support_size() > x.degree() - x.support_size() => {
                        support_obstruction(&x, &y)
                    }
                    Err(e) => return Err(e),
                };
                if commutes {
                    return Err(fail("a conjugate of y commutes with x"));
                }
            }
        }
        _ => return Ok(0),
    }
    Ok(items.len())
}

/// For `x` a single `p`-cycle with `p > n/2` and `y` a 2-element, any conjugate of
/// `y` commuting with `x` fixes `x`'s support pointwise and so moves at most `n − p`
/// points. Returns whether a commuting conjugate could exist.
fn support_obstruction(x: &Permutation, y: &Permutation) -> bool {
    let lens: Vec<usize> = x.cycle_lengths().into_iter().filter(|&l| l > 1).collect();
    let single_long_cycle = lens.len() == 1 && 2 * lens[0] > x.degree();
    !(single_long_cycle && y.support_size() > x.degree() - x.support_size())
}
