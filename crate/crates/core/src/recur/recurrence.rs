//! Annihilators of integer sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::factor_int_poly;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// `X^offset · poly` annihilates the sequence from index 0; equivalently
/// `poly` annihilates every window starting at `offset` or later.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annihilator {
    pub poly: IntPoly,
    pub offset: usize,
}

impl Annihilator {
    /// The annihilator with the power of `X` put back.
    pub fn full(&self) -> IntPoly {
        self.poly.shift(self.offset)
    }
}

/// `sum_j q_j a(i + j)`.
pub fn window_apply(q: &IntPoly, a: &[BigInt], i: usize) -> Result<BigInt> {
    let d = q.degree();
    if i + d >= a.len() {
        return Err(Error::Input(format!(
            "window {i} of a degree-{d} polynomial needs {} terms, have {}",
            i + d + 1,
            a.len()
        )));
    }
    Ok(q.coeffs().iter().zip(&a[i..]).map(|(c, x)| c * x).sum())
}

/// Number of windows of `q` that fit in `a`.
pub fn window_count(q: &IntPoly, a: &[BigInt]) -> usize {
    (a.len()).saturating_sub(q.degree())
}

fn annihilates_windows(q: &IntPoly, a: &[BigInt], from: usize, count: usize) -> bool {
    (from..from + count).all(|i| window_apply(q, a, i).is_ok_and(|v| v.is_zero()))
}

/// Whether `q` annihilates every available window starting at `from`.
pub fn annihilates_from(q: &IntPoly, a: &[BigInt], from: usize) -> bool {
    let n = window_count(q, a);
    from >= n || annihilates_windows(q, a, from, n - from)
}

/// Lowest-degree annihilator obtained by removing irreducible factors of
/// `p` one at a time. A factor `q` is dropped when `p/q` still annihilates
/// the first `max(deg q, deg p/q)` windows, which forces `p/q` to
/// annihilate the whole sequence. Leftover powers of `X` become the offset.
pub fn lda(p: &IntPoly, a: &[BigInt]) -> Result<Annihilator> {
    if p.is_zero() {
        return Err(Error::Input("the zero polynomial is not an annihilator".into()));
    }
    if a.len() < 2 * p.degree() {
        return Err(Error::Input(format!(
            "need at least {} terms for a degree-{} annihilator, have {}",
            2 * p.degree(),
            p.degree(),
            a.len()
        )));
    }
    if !annihilates_from(p, a, 0) {
        return Err(Error::Input(format!("{p} does not annihilate the sequence")));
    }
    let mut current = p.primitive();
    for q in factor_int_poly(p)?.flat() {
        let Some(r) = current.div_exact(&q) else {
            continue;
        };
        let need = q.degree().max(r.degree());
        if window_count(&r, a) >= need && annihilates_windows(&r, a, 0, need) {
            current = r;
        }
    }
    let (offset, poly) = current.strip_x();
    let poly = poly.primitive();
    if !annihilates_from(&poly, a, offset) {
        return Err(Error::Contract(format!("reduced annihilator {poly} fails to verify")));
    }
    Ok(Annihilator { poly, offset })
}

/// Windows beyond the solved system that must also vanish before a
/// candidate is accepted.
const CONFIRM: usize = 8;

/// Lowest-degree recurrence found directly from the terms: for each degree
/// `d` the monic candidate is solved exactly from the last `d` windows,
/// then checked on every earlier window to find the smallest offset.
pub fn minimal_recurrence(a: &[BigInt]) -> Result<Annihilator> {
    let n = a.len();
    // degree 0: eventually zero
    let zeros = a.iter().rev().take_while(|x| x.is_zero()).count();
    if zeros >= CONFIRM {
        return Ok(Annihilator {
            poly: IntPoly::one(),
            offset: n - zeros,
        });
    }
    let mut d = 1;
    while 2 * d + CONFIRM <= n {
        if let Some(q) = solve_tail(a, d) {
            // windows vanishing backwards from the end
            let windows = n - d;
            let mut offset = windows;
            while offset > 0 && window_apply(&q, a, offset - 1).is_ok_and(|v| v.is_zero()) {
                offset -= 1;
            }
            if windows - offset >= d + CONFIRM {
                return Ok(Annihilator { poly: q, offset });
            }
        }
        d += 1;
    }
    Err(Error::Inconclusive(format!(
        "no recurrence of degree at most {} confirmed by {n} terms",
        (n.saturating_sub(CONFIRM)) / 2
    )))
}

/// Monic `q` of degree `d` vanishing on the last `d` windows, made
/// primitive over `Z`; `None` if that Hankel system is singular.
fn solve_tail(a: &[BigInt], d: usize) -> Option<IntPoly> {
    let n = a.len();
    let first = n - 2 * d;
    // rows: sum_{j<d} q_j a(i+j) = -a(i+d)
    let mut m: Vec<Vec<BigRational>> = (first..first + d)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..d).map(|j| BigRational::from_integer(a[i + j].clone())).collect();
            row.push(BigRational::from_integer(-a[i + d].clone()));
            row
        })
        .collect();
    let sol = solve(&mut m)?;
    let mut denom = BigInt::one();
    for s in &sol {
        denom = denom.lcm(s.denom());
    }
    let mut coeffs: Vec<BigInt> = sol.iter().map(|s| s.numer() * (&denom / s.denom())).collect();
    coeffs.push(denom);
    Some(IntPoly::new(coeffs).primitive())
}

/// Gauss-Jordan elimination on an augmented square system.
fn solve(m: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let d = m.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col][col..].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                #[allow(clippy::needless_range_loop)]
                for c in col..=d {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[d].clone()).collect())
}

/// Renders an annihilator as a recurrence `a(n) = ...` valid from the
/// first index at which every referenced term exists.
pub fn describe(ann: &Annihilator) -> String {
    let q = &ann.poly;
    let d = q.degree();
    let lead = q.lead();
    let mut parts = Vec::new();
    for j in (0..d).rev() {
        let c = -q.coeff(j);
        if c.is_zero() {
            continue;
        }
        let lag = d - j;
        let term = if c.abs().is_one() {
            format!("a(n-{lag})")
        } else {
            format!("{}*a(n-{lag})", c.abs())
        };
        parts.push((c.is_negative(), term));
    }
    let mut rhs = String::new();
    for (i, (neg, term)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => rhs.push_str(&format!("-{term}")),
            (0, false) => rhs.push_str(term),
            (_, true) => rhs.push_str(&format!(" - {term}")),
            (_, false) => rhs.push_str(&format!(" + {term}")),
        }
    }
    if rhs.is_empty() {
        rhs.push('0');
    }
    let lhs = if lead.is_one() {
        "a(n)".to_string()
    } else {
        format!("{lead}*a(n)")
    };
    format!("{lhs} = {rhs} for n >= {}", ann.offset + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn powers_of_two(n: usize) -> Vec<BigInt> {
        (0..n).map(|i| BigInt::from(1u64) << i).collect()
    }

    #[test]
    fn windows() {
        let q = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(window_apply(&q, &seq(&[1, 2, 3]), 0).unwrap(), BigInt::from(1));
        assert!(window_apply(&q, &seq(&[1, 2, 3]), 2).is_err());
        let two = IntPoly::from_i64(&[-2, 1]);
        let a = powers_of_two(30);
        assert!((0..29).all(|i| window_apply(&two, &a, i).unwrap().is_zero()));
    }

    #[test]
    fn lda_strips_spurious_factors() {
        let a = powers_of_two(40);
        let p = &IntPoly::from_i64(&[-2, 1]) * &IntPoly::from_i64(&[1, 1, 1]).shift(3);
        let ann = lda(&p, &a).unwrap();
        assert_eq!(
            ann,
            Annihilator {
                poly: IntPoly::from_i64(&[-2, 1]),
                offset: 0
            }
        );
        assert!(lda(&IntPoly::from_i64(&[-3, 1]), &a).is_err());
    }

    #[test]
    fn lda_keeps_needed_x_powers() {
        // 7, 5, then Fibonacci-like from index 2
        let mut a = seq(&[7, 5, 1, 1]);
        for i in 4..40 {
            let next = &a[i - 1] + &a[i - 2];
            a.push(next);
        }
        let p = IntPoly::from_i64(&[-1, -1, 1]).shift(4);
        let ann = lda(&p, &a).unwrap();
        assert_eq!(ann.poly, IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(ann.offset, 2);
        assert_eq!(minimal_recurrence(&a).unwrap(), ann);
    }

    #[test]
    fn minimal_recurrences() {
        assert_eq!(
            minimal_recurrence(&powers_of_two(40)).unwrap(),
            Annihilator {
                poly: IntPoly::from_i64(&[-2, 1]),
                offset: 0
            }
        );
        let zeros = seq(&[3, 1, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            minimal_recurrence(&zeros).unwrap(),
            Annihilator {
                poly: IntPoly::one(),
                offset: 3
            }
        );
        // a(n+1) = a(n) + 2 a(n-1)
        let mut a = seq(&[0, 1]);
        for i in 2..40 {
            let next = &a[i - 1] + &a[i - 2] * 2;
            a.push(next);
        }
        let r = minimal_recurrence(&a).unwrap();
        assert_eq!(r.poly, IntPoly::from_i64(&[-2, -1, 1]));
        assert!(minimal_recurrence(&seq(&[1, 5, 2, 8, 3])).is_err());
    }

    #[test]
    fn describes_recurrences() {
        let ann = Annihilator {
            poly: IntPoly::from_i64(&[-1, 0, -1, 1]),
            offset: 4,
        };
        assert_eq!(describe(&ann), "a(n) = a(n-1) + a(n-3) for n >= 7");
    }
}
