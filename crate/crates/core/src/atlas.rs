//! Group corpus: textual group specs and their permutation-group constructors.
//!
//! Grammar:
//!
//! ```text
//! spec := tag ":" params | "prod(" spec "," spec ")" | "perm:" degree ":" gens
//! tag  := S | A | C | D | Q | F | PSL2 | PSL3 | M
//! gens := perm (";" perm)*          (cycle notation)
//! ```
//!
//! Every constructor asserts that the stabilizer-chain order equals the closed-form order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::FiniteField;
use crate::group::{GroupError, PermGroup};
use crate::numtheory::{is_prime, multiplicative_order_mod, prime_power, primitive_root};
use crate::perm::{PermError, Permutation};
use crate::structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("bad group spec {0:?}: {1}")]
    BadSpec(String, String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("order mismatch for {spec}: expected {expected}, chain gives {actual}")]
    OrderMismatch {
        spec: String,
        expected: u128,
        actual: u128,
    },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Largest `n` accepted for `S:n` and `A:n` (orders stay within `u128`).
pub const MAX_SYM_DEGREE: usize = 32;
/// Largest field size accepted by `PSL2:q`.
pub const MAX_PSL2_Q: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral group of order `2n` acting on `n` points.
    Dihedral(usize),
    /// Quaternion group of order 8 in its regular action.
    Quaternion,
    /// Affine group `x ↦ ax + b` over `F_p` with `a` in the subgroup of order `d`.
    Frobenius {
        p: u64,
        d: u64,
    },
    Psl2(u64),
    Psl3(u64),
    Mathieu(u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm {
        degree: usize,
        gens: Vec<Permutation>,
    },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, AtlasError> {
        let t = text.trim();
        let bad = |msg: &str| AtlasError::BadSpec(t.to_string(), msg.to_string());
        if let Some(rest) = t.strip_prefix("prod(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
            let split = top_level_comma(inner).ok_or_else(|| bad("prod needs two specs"))?;
            let a = GroupSpec::parse(&inner[..split])?;
            let b = GroupSpec::parse(&inner[split + 1..])?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        let (tag, params) = t
            .split_once(':')
            .ok_or_else(|| bad("expected tag:params"))?;
        let num = |s: &str| -> Result<u64, AtlasError> {
            s.trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("bad number {s:?}")))
        };
        let spec = match tag.trim() {
            "S" => GroupSpec::Symmetric(num(params)? as usize),
            "A" => GroupSpec::Alternating(num(params)? as usize),
            "C" => GroupSpec::Cyclic(num(params)? as usize),
            "D" => GroupSpec::Dihedral(num(params)? as usize),
            "Q" => {
                if num(params)? != 8 {
                    return Err(AtlasError::UnsupportedParameter(format!(
                        "only Q:8 is available, got {t}"
                    )));
                }
                GroupSpec::Quaternion
            }
            "F" => {
                let (p, d) = params.split_once(':').ok_or_else(|| bad("F needs p:d"))?;
                GroupSpec::Frobenius {
                    p: num(p)?,
                    d: num(d)?,
                }
            }
            "PSL2" => GroupSpec::Psl2(num(params)?),
            "PSL3" => GroupSpec::Psl3(num(params)?),
            "M" => GroupSpec::Mathieu(num(params)? as u32),
            "perm" => {
                let (deg, gens) = params
                    .split_once(':')
                    .ok_or_else(|| bad("perm needs degree:gens"))?;
                let degree = num(deg)? as usize;
                let gens = gens
                    .split(';')
                    .filter(|g| !g.trim().is_empty())
                    .map(|g| Permutation::parse(g, degree))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupSpec::Perm { degree, gens }
            }
            other => return Err(bad(&format!("unknown tag {other:?}"))),
        };
        Ok(spec)
    }

    /// Closed-form order, when the parameters are in range.
    pub fn expected_order(&self) -> Result<u128, AtlasError> {
        self.validate(true)?;
        Ok(match self {
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Alternating(n) => (factorial(*n) / 2).max(1),
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(n) => 2 * *n as u128,
            GroupSpec::Quaternion => 8,
            GroupSpec::Frobenius { p, d } => (*p as u128) * (*d as u128),
            GroupSpec::Psl2(q) => {
                let q = *q as u128;
                q * (q * q - 1) / if q % 2 == 0 { 1 } else { 2 }
            }
            GroupSpec::Psl3(_) => 5616,
            GroupSpec::Mathieu(n) => match n {
                11 => 7920,
                12 => 95040,
                22 => 443520,
                23 => 10200960,
                _ => 244823040,
            },
            GroupSpec::Product(a, b) => a.expected_order()? * b.expected_order()?,
            GroupSpec::Perm { degree, gens } => PermGroup::new(*degree, gens.clone())?.order(),
        })
    }

    fn validate(&self, extended: bool) -> Result<(), AtlasError> {
        let unsupported = |m: String| Err(AtlasError::UnsupportedParameter(m));
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if *n == 0 || *n > MAX_SYM_DEGREE {
                    return unsupported(format!("{self}: degree must be 1..={MAX_SYM_DEGREE}"));
                }
            }
            GroupSpec::Cyclic(n) => {
                if *n == 0 || *n > 10_000 {
                    return unsupported(format!("{self}: n must be 1..=10000"));
                }
            }
            GroupSpec::Dihedral(n) => {
                if *n < 3 || *n > 10_000 {
                    return unsupported(format!("{self}: n must be 3..=10000"));
                }
            }
            GroupSpec::Quaternion => {}
            GroupSpec::Frobenius { p, d } => {
                if !is_prime(*p) || *p > 10_000 {
                    return unsupported(format!("{self}: p must be a prime ≤ 10000"));
                }
                if *d == 0 || (*p - 1) % *d != 0 {
                    return unsupported(format!("{self}: d must divide p - 1"));
                }
            }
            GroupSpec::Psl2(q) => {
                if *q < 4 || *q > MAX_PSL2_Q || prime_power(*q).is_none() {
                    return unsupported(format!(
                        "{self}: q must be a prime power in 4..={MAX_PSL2_Q}"
                    ));
                }
            }
            GroupSpec::Psl3(q) => {
                if *q != 3 {
                    return unsupported(format!("{self}: only PSL3:3 is available"));
                }
            }
            GroupSpec::Mathieu(n) => match n {
                11 | 12 | 22 => {}
                23 | 24 if extended => {}
                23 | 24 => return unsupported(format!("{self} requires the extended flag")),
                _ => {
                    return unsupported(format!(
                        "{self}: Mathieu degree must be 11, 12, 22, 23 or 24"
                    ))
                }
            },
            GroupSpec::Product(a, b) => {
                a.validate(extended)?;
                b.validate(extended)?;
            }
            GroupSpec::Perm { degree, gens } => {
                if *degree == 0 {
                    return unsupported("perm degree must be positive".into());
                }
                if gens.iter().any(|g| g.degree() != *degree) {
                    return unsupported("perm generator degree mismatch".into());
                }
            }
        }
        Ok(())
    }

    /// Whether the spec is an alternating group (used for `S_n`-conjugacy checks).
    pub fn alternating_degree(&self) -> Option<usize> {
        match self {
            GroupSpec::Alternating(n) => Some(*n),
            _ => None,
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
            _ => {}
        }
    }
    found
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Quaternion => write!(f, "Q:8"),
            GroupSpec::Frobenius { p, d } => write!(f, "F:{p}:{d}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2:{q}"),
            GroupSpec::Psl3(q) => write!(f, "PSL3:{q}"),
            GroupSpec::Mathieu(n) => write!(f, "M:{n}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm:{degree}:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

/// Parses a manifest: one spec per line, `#` starts a comment.
pub fn parse_manifest(text: &str) -> Result<Vec<GroupSpec>, AtlasError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(GroupSpec::parse)
        .collect()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Builds the default-scale corpus group for `spec`.
pub fn build(spec: &GroupSpec) -> Result<PermGroup, AtlasError> {
    build_with(spec, false)
}

/// Builds `spec`; `extended` unlocks M23 and M24.
pub fn build_with(spec: &GroupSpec, extended: bool) -> Result<PermGroup, AtlasError> {
    spec.validate(extended)?;
    let group = construct(spec)?;
    let expected = spec.expected_order()?;
    let actual = group.order();
    if actual != expected {
        return Err(AtlasError::OrderMismatch {
            spec: spec.to_string(),
            expected,
            actual,
        });
    }
    Ok(group)
}

fn construct(spec: &GroupSpec) -> Result<PermGroup, AtlasError> {
    Ok(match spec {
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Alternating(n) => alternating(*n),
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Quaternion => quaternion(),
        GroupSpec::Frobenius { p, d } => frobenius(*p, *d),
        GroupSpec::Psl2(q) => psl2(*q)?,
        GroupSpec::Psl3(_) => psl3_3(),
        GroupSpec::Mathieu(n) => mathieu_unchecked(*n),
        GroupSpec::Product(a, b) => direct_product(&construct(a)?, &construct(b)?),
        GroupSpec::Perm { degree, gens } => PermGroup::new(*degree, gens.clone())?,
    })
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (3..=n)
        .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap()]
    } else {
        Vec::new()
    };
    PermGroup::new(n, gens).unwrap()
}

pub fn dihedral(n: usize) -> PermGroup {
    let rot = Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap();
    // reflection fixing point 1: i ↦ 2 - i (mod n), on residues 1-based
    let images: Vec<usize> = (1..=n).map(|i| (n + 1 - i) % n + 1).collect();
    let refl = Permutation::from_images(&images).unwrap();
    PermGroup::new(n, vec![rot, refl]).unwrap()
}

/// Regular representation of `Q₈ = {±1, ±i, ±j, ±k}` by right multiplication.
pub fn quaternion() -> PermGroup {
    // element index = 2 * unit + sign, unit in {1, i, j, k} = {0, 1, 2, 3}
    fn mul_units(a: usize, b: usize) -> (usize, bool) {
        // returns (unit, negative)
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let right_mult = |g: usize| -> Permutation {
        let images: Vec<usize> = (0..8)
            .map(|h| {
                let (u, neg) = mul_units(h / 2, g / 2);
                let sign = (h % 2) ^ (g % 2) ^ usize::from(neg);
                2 * u + sign + 1
            })
            .collect();
        Permutation::from_images(&images).unwrap()
    };
    PermGroup::new(8, vec![right_mult(2), right_mult(4)]).unwrap()
}

pub fn frobenius(p: u64, d: u64) -> PermGroup {
    let n = p as usize;
    let mut gens = Vec::new();
    if p >= 2 {
        gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
    }
    if d > 1 {
        let g = primitive_root(p).unwrap();
        let omega = (0..(p - 1) / d).fold(1u64, |acc, _| acc * g % p);
        debug_assert_eq!(
            multiplicative_order_mod(omega as u128, p as u128),
            Some(d as u128)
        );
        let images: Vec<usize> = (0..p).map(|r| (r * omega % p) as usize + 1).collect();
        gens.push(Permutation::from_images(&images).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

/// `PSL₂(q)` acting on the `q + 1` points of the projective line.
///
/// Field element `a` is point `a + 1`; `∞` is point `q + 1`. The group generated by
/// `x ↦ x + 1`, `x ↦ λx` and `x ↦ −1/x` is `PGL₂(q)`; for odd `q` its derived subgroup
/// is taken.
pub fn psl2(q: u64) -> Result<PermGroup, AtlasError> {
    GroupSpec::Psl2(q).validate(false)?;
    let field = FiniteField::new(q).map_err(|e| AtlasError::UnsupportedParameter(e.to_string()))?;
    let n = q as usize + 1;
    let inf = q as usize;
    let mobius = |f: &dyn Fn(usize) -> usize| -> Permutation {
        let images: Vec<usize> = (0..n).map(|x| f(x) + 1).collect();
        Permutation::from_images(&images).unwrap()
    };
    let translate = mobius(&|x| if x == inf { inf } else { field.add(x, 1) });
    let lambda = field.generator();
    let scale = mobius(&|x| if x == inf { inf } else { field.mul(x, lambda) });
    let invert = mobius(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            field.neg(field.inv(x).unwrap())
        }
    });
    let pgl = PermGroup::new(n, vec![translate, scale, invert])?;
    let group = if q % 2 == 1 {
        structure::derived_subgroup(&pgl)
    } else {
        pgl
    };
    let sizes = group.chain().transversal_sizes();
    if sizes.len() < 2 || sizes[0] != n || sizes[1] != n - 1 {
        return Err(AtlasError::Group(GroupError::Internal(format!(
            "PSL2({q}) is not 2-transitive"
        ))));
    }
    Ok(group)
}

/// `PSL₃(3) = SL₃(3)` acting on the 13 points of the projective plane over `F₃`.
pub fn psl3_3() -> PermGroup {
    let p = 3usize;
    // normalized vectors: first nonzero coordinate is 1, in lexicographic order
    let mut points: Vec<[usize; 3]> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    let normalize = |v: [usize; 3]| -> [usize; 3] {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = if lead == 1 { 1 } else { 2 };
        [v[0] * inv % p, v[1] * inv % p, v[2] * inv % p]
    };
    let index = |v: [usize; 3]| points.iter().position(|w| *w == v).unwrap();
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // row vector times I + E_ij: coordinate j gains v_i
            let images: Vec<usize> = points
                .iter()
                .map(|v| {
                    let mut w = *v;
                    w[j] = (w[j] + v[i]) % p;
                    index(normalize(w)) + 1
                })
                .collect();
            gens.push(Permutation::from_images(&images).unwrap());
        }
    }
    PermGroup::new(points.len(), gens).unwrap()
}

// Standard generators (the pairs a, b listed in the online ATLAS of group
// representations for the natural permutation representations).
const M11_GENS: [&str; 2] = ["(2,10)(4,11)(5,7)(8,9)", "(1,4,3,8)(2,5,6,9)"];
const M12_GENS: [&str; 2] = ["(1,4)(3,10)(5,11)(6,12)", "(1,8,9)(2,3,4)(5,12,11)(6,10,7)"];
const M22_GENS: [&str; 2] = [
    "(1,13)(2,8)(3,16)(4,12)(6,22)(7,17)(9,10)(11,14)",
    "(1,22,3,21)(2,18,4,13)(5,12)(6,11,7,15)(8,14,20,10)(17,19)",
];
const M23_GENS: [&str; 2] = [
    "(1,2)(3,4)(7,8)(9,10)(13,14)(15,16)(19,20)(21,22)",
    "(1,16,11,3)(2,9,21,12)(4,5,8,23)(6,22,14,18)(13,20)(15,17)",
];
const M24_GENS: [&str; 2] = [
    "(1,4)(2,7)(3,17)(5,13)(6,9)(8,15)(10,19)(11,18)(12,21)(14,16)(20,24)(22,23)",
    "(1,4,6)(2,21,14)(3,9,15)(5,18,10)(13,17,16)(19,24,23)",
];

fn mathieu_unchecked(n: u32) -> PermGroup {
    let gens = match n {
        11 => M11_GENS,
        12 => M12_GENS,
        22 => M22_GENS,
        23 => M23_GENS,
        24 => M24_GENS,
        _ => unreachable!("validated"),
    };
    PermGroup::from_cycle_strings(n as usize, &gens).unwrap()
}

/// Mathieu group `M_n` for `n ∈ {11, 12, 22}` (and 23, 24 when `extended`).
pub fn mathieu(n: u32, extended: bool) -> Result<PermGroup, AtlasError> {
    build_with(&GroupSpec::Mathieu(n), extended)
}

/// `A × B` acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a
        .nontrivial_generators()
        .iter()
        .map(|g| g.shifted(0, n))
        .collect();
    gens.extend(
        b.nontrivial_generators()
            .iter()
            .map(|g| g.shifted(a.degree(), n)),
    );
    PermGroup::new(n, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(s: &str) -> u128 {
        build(&GroupSpec::parse(s).unwrap()).unwrap().order()
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(order_of("S:4"), 24);
        assert_eq!(order_of("A:5"), 60);
        assert_eq!(order_of("C:12"), 12);
        assert_eq!(order_of("C:1"), 1);
        assert_eq!(order_of("D:5"), 10);
        assert_eq!(order_of("Q:8"), 8);
        assert_eq!(order_of("F:7:3"), 21);
        assert_eq!(order_of("F:5:4"), 20);
        assert_eq!(order_of("PSL2:7"), 168);
        assert_eq!(order_of("PSL2:8"), 504);
        assert_eq!(order_of("PSL2:9"), 360);
        assert_eq!(order_of("PSL3:3"), 5616);
        assert_eq!(order_of("M:11"), 7920);
        assert_eq!(order_of("prod(Q:8,C:3)"), 24);
        assert_eq!(order_of("perm:4:(1,2);(3,4)"), 4);
    }

    #[test]
    fn degrees() {
        let g = build(&GroupSpec::parse("PSL2:7").unwrap()).unwrap();
        assert_eq!(g.degree(), 8);
        let g = build(&GroupSpec::parse("PSL2:31").unwrap()).unwrap();
        assert_eq!((g.order(), g.degree()), (14880, 32));
    }

    #[test]
    fn spec_round_trip() {
        for s in [
            "S:4",
            "A:5",
            "F:7:3",
            "Q:8",
            "PSL2:8",
            "M:22",
            "prod(prod(C:2,C:3),D:4)",
            "perm:5:(1,2,3);(4,5)",
        ] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(
            GroupSpec::parse("X:4"),
            Err(AtlasError::BadSpec(..))
        ));
        assert!(matches!(
            GroupSpec::parse("S4"),
            Err(AtlasError::BadSpec(..))
        ));
        assert!(matches!(
            GroupSpec::parse("prod(S:3)"),
            Err(AtlasError::BadSpec(..))
        ));
        assert!(matches!(
            build(&GroupSpec::parse("F:7:4").unwrap()),
            Err(AtlasError::UnsupportedParameter(_))
        ));
        assert!(matches!(
            build(&GroupSpec::parse("PSL2:3").unwrap()),
            Err(AtlasError::UnsupportedParameter(_))
        ));
        assert!(matches!(
            build(&GroupSpec::parse("M:23").unwrap()),
            Err(AtlasError::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn manifest_parsing() {
        let m = parse_manifest("# corpus\nS:4\n\nA:5  # simple\n").unwrap();
        assert_eq!(m, vec![GroupSpec::Symmetric(4), GroupSpec::Alternating(5)]);
    }
}
