//! Arithmetic in `F_p` and `F_p[X]` for word-sized primes.

use num_bigint::BigUint;
use rand::Rng;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^60, 2^61)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 60..1u64 << 61) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Polynomials over `F_p`, ascending coefficients, no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce(coeffs: impl IntoIterator<Item = u64>, p: u64) -> PolyP {
    trim(coeffs.into_iter().map(|c| c % p).collect())
}

pub fn degree(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn monic(a: &[u64], p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let top = r[i + db];
        if top == 0 {
            continue;
        }
        let c = mul_mod(top, inv, p);
        q[i] = c;
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = sub_mod(r[i + j], mul_mod(c, y, p), p);
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> PolyP {
    div_rem(a, b, p).1
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let Some(&l) = r0.last() else {
        return (Vec::new(), Vec::new(), Vec::new());
    };
    let inv = inv_mod(l, p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn lcm(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let g = gcd(a, b, p);
    monic(&div_rem(&mul(a, b, p), &g, p).0, p)
}

pub fn derivative(a: &[u64], p: u64) -> PolyP {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `base^e mod m`.
pub fn pow_rem(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PolyP {
    let mut acc = rem(&[1], m, p);
    let base = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
    }
    acc
}

/// Minimal polynomial (monic, ascending) of a linearly recurrent sequence
/// over `F_p`, by Berlekamp-Massey. The result `P` of degree `L` satisfies
/// `sum_j P_j s(i + j) = 0` for every window the sequence covers.
pub fn berlekamp_massey(s: &[u64], p: u64) -> PolyP {
    // connection polynomial C with C(0) = 1
    let mut c: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![1];
    let mut len = 0usize;
    let mut m = 1usize;
    let mut last_disc = 1u64;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=len.min(c.len() - 1) {
            d = add_mod(d, mul_mod(c[i], s[n - i], p), p);
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = mul_mod(d, inv_mod(last_disc, p), p);
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            next[i + m] = sub_mod(next[i + m], mul_mod(coef, bi, p), p);
        }
        if 2 * len <= n {
            b = c;
            len = n + 1 - len;
            last_disc = d;
            m = 1;
        } else {
            m += 1;
        }
        c = next;
    }
    c.resize(len + 1, 0);
    // reverse the connection polynomial into the characteristic form
    c.reverse();
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_000_007;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(P));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(3_215_031_751));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn bm_finds_fibonacci() {
        let mut s = vec![0u64, 1];
        for i in 2..20 {
            s.push((s[i - 1] + s[i - 2]) % P);
        }
        assert_eq!(berlekamp_massey(&s, P), vec![P - 1, P - 1, 1]);
    }

    #[test]
    fn bm_handles_transients() {
        // 5, 0, 0, ... is annihilated by X
        assert_eq!(berlekamp_massey(&[5, 0, 0, 0, 0], P), vec![0, 1]);
        // 0, 0, 1, 2, 4, 8, ... needs X^2 (X - 2)
        let mut s = vec![0u64, 0, 1];
        for _ in 0..10 {
            s.push(2 * s.last().unwrap() % P);
        }
        assert_eq!(berlekamp_massey(&s, P), vec![0, 0, P - 2, 1]);
        assert_eq!(berlekamp_massey(&[0, 0, 0], P), vec![1]);
    }

    #[test]
    fn gcd_and_inverse() {
        let a = mul(&[P - 1, 1], &[2, 1], P);
        let b = mul(&[P - 1, 1], &[3, 1], P);
        assert_eq!(gcd(&a, &b, P), vec![P - 1, 1]);
        let (g, s, t) = ext_gcd(&[2, 1], &[3, 1], P);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &[2, 1], P), &mul(&t, &[3, 1], P), P), vec![1]);
        assert_eq!(lcm(&a, &b, P).len(), 4);
    }
}
