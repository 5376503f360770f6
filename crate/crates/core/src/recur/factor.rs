//! Factorization in `Z[X]`.
//!
//! Content and powers of `X` are split off first, then Yun's algorithm gives
//! squarefree parts. Each part is factored modulo a small prime (distinct-
//! degree then equal-degree splitting), the factorization is Hensel lifted
//! past a coefficient bound and true factors are recovered by trying
//! subsets of the lifted factors.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modp::{self, PolyP};
use super::poly::IntPoly;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Signed constant such that `unit * prod(f^e) = p`.
    #[serde(serialize_with = "ser_big")]
    pub unit: BigInt,
    /// Primitive irreducible factors with positive leading coefficient,
    /// sorted by degree and then coefficients.
    pub factors: Vec<(IntPoly, usize)>,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Factors repeated by multiplicity.
    pub fn flat(&self) -> Vec<IntPoly> {
        self.factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.clone(), *e))
            .collect()
    }
}

pub fn factor_int_poly(p: &IntPoly) -> Result<Factorization> {
    factor_int_poly_bounded(p, DEFAULT_DEGREE_BOUND)
}

pub fn factor_int_poly_bounded(p: &IntPoly, degree_bound: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    if p.degree() > degree_bound {
        return Err(Error::Unsupported(format!(
            "degree {} exceeds the factoring bound {degree_bound}",
            p.degree()
        )));
    }
    let mut unit = p.content();
    if p.lead().is_negative() {
        unit = -unit;
    }
    let prim = p.primitive();
    let (xpow, rest) = prim.strip_x();
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    if xpow > 0 {
        factors.push((IntPoly::x_pow(1), xpow));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (part, mult) in squarefree_parts(&rest) {
        for f in factor_squarefree(&part, &mut rng) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    let out = Factorization { unit, factors };
    debug_assert_eq!(&out.expand(), p);
    Ok(out)
}

/// Yun's squarefree decomposition of a primitive polynomial with positive
/// leading coefficient: pairs `(g_i, i)` with `p = prod g_i^i`.
fn squarefree_parts(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let d = p.derivative();
    let c = p.gcd(&d);
    let mut w = p.div_exact(&c).expect("gcd divides").primitive();
    let mut y = d.div_exact(&c).expect("gcd divides derivative");
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.degree() > 0 {
        let g = w.gcd(&z);
        if g.degree() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

fn to_modp(f: &IntPoly, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    modp::trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127,
];

/// Irreducible factors of a squarefree primitive polynomial.
fn factor_squarefree(f: &IntPoly, rng: &mut ChaCha8Rng) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.primitive()];
    }
    // choose the good prime giving the fewest modular factors
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let lead = f.lead().mod_floor(&BigInt::from(p));
        if lead.is_zero() {
            continue;
        }
        let fp = to_modp(f, p);
        if modp::gcd(&fp, &modp::derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&modp::monic(&fp, p), p, rng);
        if facs.len() == 1 {
            return vec![f.primitive()];
        }
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime keeps the polynomial squarefree");
    recombine(f, p, modular)
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`.
pub(crate) fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(PolyP, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: PolyP = vec![0, 1];
    let mut h = modp::rem(&x, &f, p);
    let pe = BigUint::from(p);
    let mut d = 0;
    while modp::degree(&f) >= 2 * (d + 1) {
        d += 1;
        h = modp::pow_rem(&h, &pe, &f, p);
        let g = modp::gcd(&modp::sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = modp::div_rem(&f, &g, p).0;
            h = modp::rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = modp::degree(&f);
        out.push((f, deg));
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
    let n = modp::degree(g);
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PolyP = modp::trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = modp::sub(&modp::pow_rem(&a, &e, g, p), &[1], p);
        let h = modp::gcd(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let rest = modp::div_rem(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&rest, d, p, rng, out);
            return;
        }
    }
}

/// Polynomials modulo `m = p^j`, coefficients in `[0, m)`.
struct ModRing {
    m: BigInt,
}

impl ModRing {
    fn red(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(&self.m)).collect();
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.red(&out)
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v: Vec<BigInt> = (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect();
        self.red(&v)
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v: Vec<BigInt> = (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect();
        self.red(&v)
    }

    /// Division by a monic polynomial.
    fn div_rem_monic(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        debug_assert!(b.last().is_some_and(One::is_one));
        if a.len() < b.len() {
            return (Vec::new(), self.red(a));
        }
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].mod_floor(&self.m);
            if c.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
            q[i] = c;
        }
        (self.red(&q), self.red(&r))
    }
}

fn lift_poly(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// to the same relations modulo `m^2`; `h` stays monic.
#[allow(clippy::type_complexity)]
fn hensel_step(
    m2: &ModRing,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = m2.sub(f, &m2.mul(g, h));
    let (q, r) = m2.div_rem_monic(&m2.mul(s, &e), h);
    let g2 = m2.add(g, &m2.add(&m2.mul(t, &e), &m2.mul(&q, g)));
    let h2 = m2.add(h, &r);
    let b = m2.sub(&m2.add(&m2.mul(s, &g2), &m2.mul(t, &h2)), &[BigInt::one()]);
    let (c, d) = m2.div_rem_monic(&m2.mul(s, &b), &h2);
    let s2 = m2.sub(s, &d);
    let t2 = m2.sub(t, &m2.add(&m2.mul(t, &b), &m2.mul(&c, &g2)));
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f) · prod(factors) (mod p)` to monic factors modulo
/// `p^(2^steps)`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyP], p: u64, steps: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let target = pb.pow(1 << steps);
    if factors.len() == 1 {
        let ring = ModRing { m: target.clone() };
        let lc = f.last().expect("nonzero").mod_floor(&target);
        let inv = lc.modinv(&target).expect("lead coprime to p");
        let scaled: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![ring.red(&scaled)];
    }
    let half = factors.len() / 2;
    let lc_p = f.last().unwrap().mod_floor(&pb).to_u64().unwrap();
    let mut g0: PolyP = vec![lc_p];
    for fac in &factors[..half] {
        g0 = modp::mul(&g0, fac, p);
    }
    let mut h0: PolyP = vec![1];
    for fac in &factors[half..] {
        h0 = modp::mul(&h0, fac, p);
    }
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_poly(&g0), lift_poly(&h0), lift_poly(&s0), lift_poly(&t0));
    let mut m = pb.clone();
    for _ in 0..steps {
        m = &m * &m;
        let ring = ModRing { m: m.clone() };
        (g, h, s, t) = hensel_step(&ring, f, &g, &h, &s, &t);
    }
    let mut out = multifactor_lift(&g, &factors[..half], p, steps);
    out.extend(multifactor_lift(&h, &factors[half..], p, steps));
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: &IntPoly, p: u64, modular: Vec<PolyP>) -> Vec<IntPoly> {
    let n = f.degree();
    // coefficient bound for any factor, times the leading coefficient
    let norm = f.max_norm();
    let bound = BigInt::from(2u32).pow(n as u32) * BigInt::from((n + 1).sqrt() + 1) * norm * f.lead().abs();
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    while pb.pow(1 << steps) <= &bound * 2 {
        steps += 1;
    }
    let modulus = pb.pow(1 << steps);
    let lifted = multifactor_lift(f.coeffs(), &modular, p, steps);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = f.lead();
        let r = remaining.len();
        // iterate over all subsets of the given size via index combinations
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut g: Vec<BigInt> = vec![lc.clone()];
            let ring = ModRing { m: modulus.clone() };
            for &i in &idx {
                g = ring.mul(&g, &remaining[i]);
            }
            let cand = IntPoly::new(g.iter().map(|c| symmetric(c, &modulus)).collect()).primitive();
            if cand.degree() > 0 {
                if let Some(q) = f.div_exact(&cand) {
                    found.push(cand);
                    f = q.primitive();
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination
            let mut k = size;
            loop {
                if k == 0 {
                    size += 1;
                    continue 'outer;
                }
                k -= 1;
                if idx[k] < r - size + k {
                    idx[k] += 1;
                    for j in k + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.degree() > 0 {
        found.push(f.primitive());
    }
    found
}
