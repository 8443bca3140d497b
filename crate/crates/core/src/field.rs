//! Small finite fields `F_q`, `q = p^k`, with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits are the coefficients of a
//! polynomial of degree `< k` (least significant digit = constant term). The modulus is the
//! least monic irreducible polynomial of degree `k` when its non-leading coefficients
//! `(c_{k-1}, …, c_0)` are compared lexicographically.

use thiserror::Error;

use crate::numtheory::prime_power;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} is outside the supported range 2..=1024")]
    Unsupported(u64),
}

/// Largest supported field order (tables are `q²` entries).
pub const MAX_FIELD_ORDER: u64 = 1024;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: usize,
    /// Monic modulus, coefficients from constant term up (length `k + 1`).
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    generator: usize,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            return Err(FieldError::Unsupported(q));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let (p, k) = (p as u32, k);
        let modulus = least_irreducible(p, k);
        assert!(is_irreducible(&modulus, p), "modulus must be irreducible");
        let q = q as usize;
        let digits = |mut x: usize| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |v: &[u32]| -> usize {
            v.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize)
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u16;
                // schoolbook product then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = deg - k as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]) as u16;
            }
        }
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        let mut field = Self {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator: 0,
        };
        field.generator = (1..q)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group (the least one in the element encoding).
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r = num.to_vec();
    let d = monic_div.len() - 1;
    for deg in (d..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (i, m) in monic_div.iter().enumerate() {
            let idx = deg - d + i;
            r[idx] = (r[idx] + (p - c) * m) % p;
        }
    }
    r[..d].iter().all(|&c| c == 0)
}
