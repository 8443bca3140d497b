//! Integer helpers: primality, factorization, cyclotomic values, primitive prime divisors.

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `Some((p, k))` if `q = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q as u128) as u64;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub fn smallest_prime_factor(n: u128) -> u128 {
    assert!(n >= 2);
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u128;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Prime factorization `(p, e)` with increasing `p`.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p as u64).collect()
}

/// Largest power of `p` dividing `n` (`n > 0`).
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// The prime `p` when `n = p^k` with `k ≥ 1`.
pub fn prime_of_prime_power(n: u64) -> Option<u64> {
    prime_power(n).map(|(p, _)| p)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let Some(x) = a.checked_mul(b) {
        return x % m;
    }
    // double-and-add fallback for large moduli
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

/// Least `k ≥ 1` with `a^k ≡ 1 (mod m)`; `None` if `gcd(a, m) ≠ 1`.
pub fn multiplicative_order_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(1);
    }
    if gcd_u128(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

/// Smallest primitive root modulo the prime `p`, found by exhaustive search.
pub fn primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    if p == 2 {
        return Some(1);
    }
    (1..p).find(|&a| multiplicative_order_mod(a as u128, p as u128) == Some(p as u128 - 1))
}

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let mut result = 1;
    for (_, e) in factorize(n as u128) {
        if e > 1 {
            return 0;
        }
        result = -result;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Integer coefficients of `Φ_n(x)`, constant term first, from the Möbius product
/// `Φ_n(x) = ∏_{d | n} (x^d − 1)^{μ(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut num: Vec<i64> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = mul_x_d_minus_1(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        num = div_x_d_minus_1(&num, d);
    }
    while num.len() > 1 && *num.last().unwrap() == 0 {
        num.pop();
    }
    num
}

fn mul_x_d_minus_1(poly: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; poly.len() + d];
    for (i, &c) in poly.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_x_d_minus_1(poly: &[i64], d: usize) -> Vec<i64> {
    // poly = q(x) (x^d - 1): q_i = q_{i-d} - poly_i, read from the bottom.
    let qlen = poly.len() - d;
    let mut q = vec![0i64; qlen];
    for i in 0..qlen {
        let prev = if i >= d { q[i - d] } else { 0 };
        q[i] = prev - poly[i];
    }
    debug_assert_eq!(
        mul_x_d_minus_1(&q, d),
        poly,
        "division by x^d - 1 must be exact"
    );
    q
}

/// `Φ_n(q)`; `None` on overflow.
pub fn cyclotomic_value(n: u64, q: u64) -> Option<u128> {
    let coeffs = cyclotomic_poly(n);
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(q as i128)?.checked_add(c as i128)?;
    }
    u128::try_from(acc).ok()
}

/// Smallest primitive prime divisor of `q^n − 1`: a prime dividing `q^n − 1` but no
/// `q^k − 1` with `1 ≤ k < n`. `None` exactly in the Zsigmondy exceptions.
///
/// Prime divisors of `Φ_n(q)` that do not divide `n` are primitive, and every primitive
/// prime divisor divides `Φ_n(q)`.
pub fn ppd(q: u64, n: u64) -> Option<u64> {
    assert!(q >= 2 && n >= 1);
    let mut m = cyclotomic_value(n, q).expect("Φ_n(q) fits in 128 bits");
    loop {
        let g = gcd_u128(m, n as u128);
        if g == 1 {
            break;
        }
        m /= g;
    }
    if m == 1 {
        return None;
    }
    let ell = smallest_prime_factor(m);
    debug_assert_eq!(multiplicative_order_mod(q as u128, ell), Some(n as u128));
    Some(ell as u64)
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(n: u128) -> u32 {
    assert!(n != 0);
    n.trailing_zeros()
}

/// For `q ≡ 3 (mod 4)` and even `n`: whether `(q^n − 1)₂ = (q² − 1)₂ · (n/2)₂`,
/// with 2-parts computed directly. `None` if the preconditions fail.
pub fn two_adic_identity_check(q: u64, n: u64) -> Option<bool> {
    if q % 4 != 3 || n == 0 || n % 2 != 0 {
        return None;
    }
    // q^n mod 2^128 is exact for the low bits, and the valuation stays far below 128.
    let qn = (q as u128).wrapping_pow(n as u32);
    let lhs = v2(qn.wrapping_sub(1));
    let rhs = v2((q as u128) * (q as u128) - 1) + v2((n / 2) as u128);
    Some(lhs == rhs)
}
