//! Closed-form cycle-type combinatorics in `S_n` and `A_n`, the search for real elements
//! of odd prime-power order with odd centralizer, and explicit constructions of real
//! pairs and normalizing 2-elements in `A_n`.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::cycles::CycleType;
use crate::numtheory::{is_prime, prime_of_prime_power, primes_up_to, primitive_root};
use crate::perm::Permutation;

pub use crate::numtheory::{cyclotomic_value, ppd, two_adic_identity_check};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymcombError {
    #[error("cycle type {0} is an odd permutation")]
    OddPermutation(String),
    #[error("degree {0} is too small (need n >= 5)")]
    DegreeTooSmall(usize),
    #[error("degree {n} is outside the search range 5..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("no suitable prime for n = {0}")]
    NoSuitablePrime(usize),
    #[error("construction needs n = 24 or n >= 42, got {0}")]
    NotApplicable(usize),
}

/// Largest degree handled by [`search_odd_centralizer_real`].
pub const MAX_SEARCH_DEGREE: usize = 64;

fn factorial(m: usize) -> BigUint {
    (1..=m as u64).map(BigUint::from).product()
}

/// `|C_{S_n}(x)| = ∏ l^{m_l} · m_l!` over the distinct cycle lengths `l`.
pub fn centralizer_order_sym(ct: &CycleType) -> BigUint {
    ct.parts()
        .map(|(l, m)| BigUint::from(l).pow(m as u32) * factorial(m))
        .product()
}

fn require_even(ct: &CycleType) -> Result<(), SymcombError> {
    if ct.is_even() {
        Ok(())
    } else {
        Err(SymcombError::OddPermutation(ct.to_string()))
    }
}

/// Whether the `S_n`-class of an even type splits into two `A_n`-classes: all lengths
/// odd and pairwise distinct.
pub fn splits_in_alt(ct: &CycleType) -> Result<bool, SymcombError> {
    require_even(ct)?;
    Ok(ct.parts().all(|(l, m)| l % 2 == 1 && m == 1))
}

pub fn centralizer_order_alt(ct: &CycleType) -> Result<BigUint, SymcombError> {
    let sym = centralizer_order_sym(ct);
    Ok(if splits_in_alt(ct)? { sym } else { sym / 2u32 })
}

/// Realness in `A_n`. A non-split class is real (every element of `S_n` is real and
/// the class is a single `A_n`-class). In the split case the centralizer in `S_n` is
/// even, so `x` is real in `A_n` iff the reversal of each cycle, a product of
/// `Σ (l − 1)/2` transpositions, is even.
pub fn is_real_in_alt(ct: &CycleType) -> Result<bool, SymcombError> {
    if !splits_in_alt(ct)? {
        return Ok(true);
    }
    let transpositions: usize = ct.parts().map(|(l, m)| m * (l - 1) / 2).sum();
    Ok(transpositions % 2 == 0)
}

/// A real element of `A_n` of odd prime-power order whose centralizer has odd order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealElementFinding {
    pub n: usize,
    pub order: u64,
    pub cycle_type: CycleType,
    pub centralizer_order_alt: u128,
    /// Free-text label; classes are identified by (order, centralizer order) only.
    pub class_label_hint: Option<String>,
}

/// All even cycle types of odd prime-power order in `A_n` that are real with odd
/// centralizer order, sorted by (order, centralizer order, cycle type).
pub fn search_odd_centralizer_real(n: usize) -> Result<Vec<RealElementFinding>, SymcombError> {
    if !(5..=MAX_SEARCH_DEGREE).contains(&n) {
        return Err(SymcombError::DegreeOutOfRange {
            n,
            max: MAX_SEARCH_DEGREE,
        });
    }
    let mut findings = Vec::new();
    for p in primes_up_to(n as u64).into_iter().filter(|&p| p > 2) {
        let mut powers = Vec::new();
        let mut q = p as usize;
        while q <= n {
            powers.push(q);
            q *= p as usize;
        }
        powers.reverse();
        let mut parts = Vec::new();
        enumerate_parts(&powers, 0, n, &mut parts, &mut |parts: &[usize]| {
            let used: usize = parts.iter().sum();
            let ct = CycleType::from_lengths(
                parts
                    .iter()
                    .copied()
                    .chain(std::iter::repeat(1).take(n - used)),
            )
            .expect("nonempty");
            if let Some(f) = evaluate_type(n, &ct) {
                findings.push(f);
            }
        });
    }
    findings.sort_by(|a, b| {
        (a.order, a.centralizer_order_alt, &a.cycle_type).cmp(&(
            b.order,
            b.centralizer_order_alt,
            &b.cycle_type,
        ))
    });
    Ok(findings)
}

/// Multisets of `powers` (non-increasing) with sum at most `room`, at least one part.
fn enumerate_parts(
    powers: &[usize],
    start: usize,
    room: usize,
    parts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    for i in start..powers.len() {
        let q = powers[i];
        if q > room {
            continue;
        }
        parts.push(q);
        visit(parts);
        enumerate_parts(powers, i, room - q, parts, visit);
        parts.pop();
    }
}

fn evaluate_type(n: usize, ct: &CycleType) -> Option<RealElementFinding> {
    let order = ct.element_order();
    prime_of_prime_power(order).filter(|&p| p > 2)?;
    if !ct.is_even() || !is_real_in_alt(ct).ok()? {
        return None;
    }
    let c = centralizer_order_alt(ct).ok()?;
    if c.bit(0) {
        let centralizer_order_alt = u128::try_from(c).ok()?;
        Some(RealElementFinding {
            n,
            order,
            cycle_type: ct.clone(),
            centralizer_order_alt,
            class_label_hint: None,
        })
    } else {
        None
    }
}

/// A real element `x` of `A_n` and an even `t` with `x^t = x⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealPair {
    pub n: usize,
    pub x: Permutation,
    pub t: Permutation,
    pub centralizer_order_alt: u128,
}

/// For odd `n`, `x = (1,…,n−2)`; for even `n`, `x = (1,…,n−3)`. With `2k + 1` the
/// length of `x`, `t = (1,2k+1)(2,2k)…(k,k+2)`, times `(2k+2,2k+3)` when `k` is odd.
/// The centralizer in `A_n` has order `n − 2` (odd `n`) or `3(n − 3)` (even `n`).
pub fn construct_real_pair(n: usize) -> Result<RealPair, SymcombError> {
    if n < 5 {
        return Err(SymcombError::DegreeTooSmall(n));
    }
    let len = if n % 2 == 1 { n - 2 } else { n - 3 };
    let k = (len - 1) / 2;
    let x = Permutation::from_cycles(n, &[(1..=len).collect()]).expect("valid cycle");
    let mut cycles: Vec<Vec<usize>> = (1..=k).map(|i| vec![i, 2 * k + 2 - i]).collect();
    if k % 2 == 1 {
        cycles.push(vec![2 * k + 2, 2 * k + 3]);
    }
    let t = Permutation::from_cycles(n, &cycles).expect("valid cycles");
    let centralizer = centralizer_order_alt(&x.cycle_type()).expect("odd cycle is even");
    let centralizer_order_alt = u128::try_from(centralizer).expect("small");
    let expected = if n % 2 == 1 { n - 2 } else { 3 * (n - 3) } as u128;
    assert!(t.is_even(), "t must lie in A_n");
    assert_eq!(x.conjugate_by(&t), x.inverse(), "t must invert x");
    assert_eq!(centralizer_order_alt, expected, "centralizer order");
    Ok(RealPair {
        n,
        x,
        t,
        centralizer_order_alt,
    })
}

/// Checked properties of the normalizing 2-element `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongCycleVerdict {
    pub y_order: u64,
    pub expected_y_order: u64,
    pub y_even: bool,
    pub normalizes: bool,
    pub centralizes: bool,
    pub moved_points: usize,
    pub complement_size: usize,
    pub support_obstruction: bool,
}

impl LongCycleVerdict {
    pub fn holds(&self) -> bool {
        self.y_order == self.expected_y_order
            && self.y_even
            && self.normalizes
            && !self.centralizes
            && self.support_obstruction
    }
}

/// `x = (1,…,p)` and a 2-element `y ∈ A_n` normalizing `⟨x⟩` whose support is larger
/// than the complement of `x`'s support, so no `S_n`-conjugate of `y` centralizes `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongCyclePair {
    pub n: usize,
    pub p: u64,
    pub alpha: u64,
    pub a: u32,
    pub m: u64,
    pub x: Permutation,
    pub t: Permutation,
    pub y: Permutation,
    pub verdict: LongCycleVerdict,
}

/// Smallest prime `p` with `n/2 ≤ p ≤ n − 2`, or 19 for `n = 24`.
pub fn long_cycle_prime(n: usize) -> Result<u64, SymcombError> {
    if n == 24 {
        return Ok(19);
    }
    if n < 42 {
        return Err(SymcombError::NotApplicable(n));
    }
    ((n as u64).div_ceil(2)..=n as u64 - 2)
        .find(|&p| is_prime(p))
        .ok_or(SymcombError::NoSuitablePrime(n))
}

/// Builds `x = (1,…,p)`, `t : r ↦ αr (mod p)` (point `p` is residue 0) with `α` the
/// smallest primitive root, `s = t·(p+1,p+2)` and `y = s^m` where `p − 1 = 2^a m`.
pub fn construct_long_cycle_pair(n: usize, p: u64) -> Result<LongCyclePair, SymcombError> {
    if n != 24 && n < 42 {
        return Err(SymcombError::NotApplicable(n));
    }
    if !is_prime(p) || 2 * p < n as u64 || p + 2 > n as u64 {
        return Err(SymcombError::NoSuitablePrime(n));
    }
    let alpha = primitive_root(p).expect("p is prime");
    let pu = p as usize;
    let x = Permutation::from_cycles(n, &[(1..=pu).collect()]).expect("valid cycle");
    let mut images: Vec<usize> = (1..=n).collect();
    for r in 1..pu {
        images[r - 1] = (r as u64 * alpha % p) as usize;
    }
    for im in images.iter_mut().take(pu - 1) {
        if *im == 0 {
            *im = pu;
        }
    }
    let t = Permutation::from_images(&images).expect("multiplication by a unit");
    let swap = Permutation::from_cycles(n, &[vec![pu + 1, pu + 2]]).expect("valid");
    let s = t.then(&swap);
    let a = (p - 1).trailing_zeros();
    let m = (p - 1) >> a;
    let y = s.pow(m as i64);
    let xy = x.conjugate_by(&y);
    let powers_of_x: Vec<Permutation> = (0..p as i64).map(|k| x.pow(k)).collect();
    let moved_points = y.support_size();
    let verdict = LongCycleVerdict {
        y_order: y.order(),
        expected_y_order: 1 << a,
        y_even: y.is_even(),
        normalizes: powers_of_x.contains(&xy),
        centralizes: xy == x,
        moved_points,
        complement_size: n - pu,
        support_obstruction: n - pu < moved_points,
    };
    Ok(LongCyclePair {
        n,
        p,
        alpha,
        a,
        m,
        x,
        t,
        y,
        verdict,
    })
}
