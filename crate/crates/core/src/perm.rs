//! Permutations on the points `1..=n`.
//!
//! Points are 1-based at every public boundary. Composition is the right action:
//! `a.compose(&b)` applies `a` first and then `b`, so conjugation is
//! `x^g = g⁻¹ x g`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::cycles::CycleType;

/// Errors raised by permutation parsing and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {0} occurs more than once")]
    PointRepeated(usize),
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("degree {0} is not supported (must be 1..=65535)")]
    BadDegree(usize),
}

/// Largest degree representable with 16-bit point storage.
pub const MAX_DEGREE: usize = u16::MAX as usize;

/// A bijection of `{1..n}`.
///
/// Internally the images are stored 0-based as `u16`. The derived ordering compares
/// image sequences lexicographically, which is the canonical element order used for
/// enumeration and class representatives.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images
            .len()
            .cmp(&other.images.len())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1 && degree <= MAX_DEGREE, "bad degree {degree}");
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::BadDegree(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(PermError::NotABijection(n));
            }
            seen[im - 1] = true;
            out.push((im - 1) as u16);
        }
        Ok(Self {
            images: out.into_boxed_slice(),
        })
    }

    /// 0-based constructor used by the internal algorithms. The caller guarantees a bijection.
    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images
                .iter()
                .all(|&i| !std::mem::replace(&mut seen[i as usize], true))
        });
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(PermError::PointRepeated(p));
                }
                used[p - 1] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u16;
            }
        }
        Ok(Self::from_raw(images))
    }

    /// Parses cycle notation such as `"(1,2,3)(4,5)"` or `"()"`.
    ///
    /// Points inside a cycle may be separated by commas or spaces. Points must be distinct
    /// across the whole string.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub(crate) fn img(&self, point0: usize) -> usize {
        self.images[point0] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| i == im as usize)
    }

    /// `self` then `other`: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let o = &other.images;
        Self {
            images: self.images.iter().map(|&i| o[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u16;
        }
        Self::from_raw(inv)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // x^g maps g(i) to g(x(i)).
        let mut out = vec![0u16; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[im as usize];
        }
        Self::from_raw(out)
    }

    /// Commutator `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        let (a, b) = (&self.images, &other.images);
        a.iter()
            .zip(b.iter())
            .all(|(&ai, &bi)| b[ai as usize] == a[bi as usize])
    }

    /// Disjoint cycles of length ≥ 2, as 1-based points, each starting at its smallest point,
    /// ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths()).expect("cycle lengths are positive")
    }

    /// Least `k ≥ 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let cycles = self.cycle_lengths().len();
        (n - cycles) % 2 == 0
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &im)| *i != im as usize)
            .count()
    }

    /// Smallest moved point (1-based), if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &im)| *i != im as usize)
            .map(|(i, _)| i + 1)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut v = self.images.to_vec();
        v.extend(self.degree() as u16..degree as u16);
        Self::from_raw(v)
    }

    /// Moves every point up by `offset` inside a permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for (i, &im) in self.images.iter().enumerate() {
            v[i + offset] = im + offset as u16;
        }
        Self::from_raw(v)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Right-action product; panics on degree mismatch. Use [`Permutation::compose`] for a
    /// checked version.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Splits cycle notation into 1-based cycles without validating against a degree.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut chars = text.trim().chars().peekable();
    let mut saw_any = false;
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(PermError::MalformedCycle(format!(
                "expected '(' but found {c:?} in {text:?}"
            )));
        }
        chars.next();
        saw_any = true;
        let mut body = String::new();
        let mut closed = false;
        for c in chars.by_ref() {
            match c {
                ')' => {
                    closed = true;
                    break;
                }
                '(' => {
                    return Err(PermError::MalformedCycle(format!("nested '(' in {text:?}")));
                }
                _ => body.push(c),
            }
        }
        if !closed {
            return Err(PermError::MalformedCycle(format!(
                "unbalanced parentheses in {text:?}"
            )));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| PermError::MalformedCycle(format!("bad token {tok:?}")))?;
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        } else if body.chars().any(|c| c == ',') {
            return Err(PermError::MalformedCycle(format!(
                "empty cycle entries in {text:?}"
            )));
        }
    }
    if !saw_any {
        return Err(PermError::MalformedCycle(format!("no cycles in {text:?}")));
    }
    Ok(cycles)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parse_reads_cycles() {
        assert_eq!(p("(1,2,3)(4,5)", 5).images(), vec![2, 3, 1, 5, 4]);
        assert!(p("()", 4).is_identity());
        assert_eq!(p("(2,1)", 3).to_string(), "(1,2)");
        assert_eq!(p("(1 2 3) (4 5)", 5), p("(1,2,3)(4,5)", 5));
        assert_eq!(p("(4,5)(3,1,2)", 5).to_string(), "(1,2,3)(4,5)");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("(1,2", 3),
            Err(PermError::MalformedCycle(_))
        ));
        assert!(matches!(
            Permutation::parse("(1,x)", 3),
            Err(PermError::MalformedCycle(_))
        ));
        assert_eq!(
            Permutation::parse("(1,2)(2,3)", 3),
            Err(PermError::PointRepeated(2))
        );
        assert_eq!(
            Permutation::parse("(1,4)", 3),
            Err(PermError::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::parse("(0,1)", 3),
            Err(PermError::PointOutOfRange {
                point: 0,
                degree: 3
            })
        );
    }

    #[test]
    fn composition_is_right_action() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap().to_string(), "(1,3,2)");
        let x = p("(1,2,3)", 3);
        assert!(x.compose(&p("(1,3,2)", 3)).unwrap().is_identity());
        assert_eq!(x.compose(&Permutation::identity(3)).unwrap(), x);
        assert_eq!(
            x.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn inverse_order_cycle_type() {
        let x = p("(1,2,3)(4,5)", 6);
        assert_eq!(x.order(), 6);
        assert_eq!(p("(1,2,3)", 3).inverse().to_string(), "(1,3,2)");
        let ct = x.cycle_type();
        assert_eq!(ct.multiplicity(3), 1);
        assert_eq!(ct.multiplicity(2), 1);
        assert_eq!(ct.multiplicity(1), 1);
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = p("(1,2,3,4,5)", 6);
        let g = p("(1,6)(2,4)", 6);
        let expect = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), expect);
    }

    #[test]
    fn pow_and_commutator() {
        let x = p("(1,2,3,4,5,6)", 6);
        assert_eq!(x.pow(6), Permutation::identity(6));
        assert_eq!(x.pow(-1), x.inverse());
        assert!(x.commutator(&x.pow(2)).is_identity());
        assert!(x.commutes_with(&x.pow(3)));
    }
}
