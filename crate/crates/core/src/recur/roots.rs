//! Dominant real roots and growth constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::factor::factor_int_poly;
use super::poly::IntPoly;
use super::recurrence::{minimal_recurrence, Annihilator};
use crate::error::{Error, Result};

/// Isolating interval `(lo, hi]` of a real root, or the exact root when
/// `exact` is set (then `lo == hi`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: bool,
}

impl RootInterval {
    pub fn midpoint(&self) -> f64 {
        let two = BigRational::from_integer(BigInt::from(2));
        ((&self.lo + &self.hi) / two).to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        lo <= x && x <= hi
    }
}

impl Serialize for RootInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootInterval", 4)?;
        st.serialize_field("lo", &self.lo.to_f64())?;
        st.serialize_field("hi", &self.hi.to_f64())?;
        st.serialize_field("value", &self.midpoint())?;
        st.serialize_field("exact", &self.exact)?;
        st.end()
    }
}

pub const ROOT_WIDTH: f64 = 1e-12;

/// Sturm sequence of a squarefree polynomial.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() && chain.last().unwrap().degree() > 0 {
        let n = chain.len();
        // negated remainder; pseudo-division by a positive multiple keeps signs
        let b = &chain[n - 1];
        let mut r = chain[n - 2].pseudo_rem(b);
        let lead = b.lead();
        if lead.is_negative() && (chain[n - 2].degree() + 1 - b.degree()) % 2 == 1 {
            r = -&r;
        }
        let r = -&r;
        if r.is_zero() {
            break;
        }
        let c = r.content();
        chain.push(IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect()));
    }
    chain
}

fn sign_changes(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval_rational(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Largest real root of `p`, `None` if there is none.
pub fn dominant_root(p: &IntPoly) -> Result<Option<RootInterval>> {
    dominant_root_within(p, ROOT_WIDTH)
}

pub fn dominant_root_within(p: &IntPoly, width: f64) -> Result<Option<RootInterval>> {
    if p.is_zero() {
        return Err(Error::Input("the zero polynomial has no isolated roots".into()));
    }
    if p.degree() == 0 {
        return Ok(None);
    }
    let sf = p.div_exact(&p.gcd(&p.derivative())).expect("gcd divides").primitive();
    let chain = sturm_chain(&sf);
    // Cauchy bound rounded up to a power of two
    let lead = sf.lead().abs();
    let ratio = sf.coeffs().iter().map(|c| c.abs()).max().unwrap() / &lead + BigInt::one() + BigInt::one();
    let bound = BigRational::from_integer(BigInt::one() << ratio.bits());
    let mut lo = -bound.clone();
    let mut hi = bound;
    if sign_changes(&chain, &lo) == sign_changes(&chain, &hi) {
        return Ok(None);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let target = BigRational::from_float(width).expect("finite width");
    loop {
        if sf.eval_rational(&hi).is_zero() {
            return Ok(Some(RootInterval {
                lo: hi.clone(),
                hi,
                exact: true,
            }));
        }
        if &hi - &lo <= target {
            return Ok(Some(RootInterval { lo, hi, exact: false }));
        }
        let mid = (&lo + &hi) / &two;
        // roots in (mid, hi] = V(mid) - V(hi)
        if sign_changes(&chain, &mid) > sign_changes(&chain, &hi) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthMode {
    /// `a(n) ~ C α^n`.
    Single,
    /// `a(n) ~ C1 α^n + C2 (-α)^n`.
    PlusMinus,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticFit {
    pub alpha: f64,
    pub mode: GrowthMode,
    pub c1: f64,
    pub c2: Option<f64>,
    /// `"residue"` when taken from the rational generating function, or
    /// `"empirical"` when only the ratio mean was available.
    pub method: &'static str,
    pub annihilator: Option<Annihilator>,
    /// Mean of `a(n)/α^n` over the last quarter of the terms (per parity
    /// class in `PlusMinus` mode, combined as `C1`).
    pub empirical_c1: f64,
    pub empirical_c2: Option<f64>,
    /// Relative spread of `a(n)/α^n` over the last quarter.
    pub drift: f64,
}

/// `ln |x|` for big integers of any size.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn scaled(x: &BigInt, n: usize, alpha: f64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_big(x) - n as f64 * alpha.ln()).exp()
}

/// Growth constants of `a`, given its dominant root.
///
/// When a recurrence is found, the generating function is `P(x)/Q(x)` with
/// `Q` the reversed annihilator and `C = -P(ρ)/(ρ Q'(ρ))` at `ρ = 1/α`;
/// that residue converges regardless of how close subdominant roots are.
/// The ratio mean over the last quarter is always reported alongside.
pub fn asymptotic_fit(a: &[BigInt], alpha: &RootInterval) -> Result<AsymptoticFit> {
    let alpha_f = alpha.midpoint();
    // written this way so NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(alpha_f > 1.0) {
        return Err(Error::Input(format!("dominant root {alpha_f} is not greater than 1")));
    }
    if a.len() < 8 {
        return Err(Error::Input("too few terms for an asymptotic fit".into()));
    }
    let ann = minimal_recurrence(a).ok();
    let mode = match &ann {
        Some(ann) => detect_mode(&ann.poly, alpha)?,
        None => GrowthMode::Single,
    };

    let n = a.len();
    let tail: Vec<(usize, f64)> = (n - n / 4..n).map(|i| (i, scaled(&a[i], i, alpha_f))).collect();
    let mean = |it: &mut dyn Iterator<Item = f64>| {
        let v: Vec<f64> = it.collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let (empirical_c1, empirical_c2, drift) = match mode {
        GrowthMode::Single => {
            let m = mean(&mut tail.iter().map(|t| t.1));
            let max = tail.iter().map(|t| t.1).fold(f64::MIN, f64::max);
            let min = tail.iter().map(|t| t.1).fold(f64::MAX, f64::min);
            (m, None, (max - min) / m.abs())
        }
        GrowthMode::PlusMinus => {
            let even = mean(&mut tail.iter().filter(|t| t.0 % 2 == 0).map(|t| t.1));
            let odd = mean(&mut tail.iter().filter(|t| t.0 % 2 == 1).map(|t| t.1));
            let spread = |parity: usize, m: f64| {
                let v: Vec<f64> = tail.iter().filter(|t| t.0 % 2 == parity).map(|t| t.1).collect();
                let max = v.iter().copied().fold(f64::MIN, f64::max);
                let min = v.iter().copied().fold(f64::MAX, f64::min);
                (max - min) / m.abs()
            };
            let drift = spread(0, even).max(spread(1, odd));
            ((even + odd) / 2.0, Some((even - odd) / 2.0), drift)
        }
    };

    let residues = ann.as_ref().and_then(|ann| {
        let c1 = residue(a, ann, 1.0 / alpha_f)?;
        let c2 = match mode {
            GrowthMode::Single => None,
            GrowthMode::PlusMinus => Some(residue(a, ann, -1.0 / alpha_f)?),
        };
        Some((c1, c2))
    });
    Ok(match residues {
        Some((c1, c2)) => AsymptoticFit {
            alpha: alpha_f,
            mode,
            c1,
            c2,
            method: "residue",
            annihilator: ann,
            empirical_c1,
            empirical_c2,
            drift,
        },
        None => AsymptoticFit {
            alpha: alpha_f,
            mode,
            c1: empirical_c1,
            c2: empirical_c2,
            method: "empirical",
            annihilator: ann,
            empirical_c1,
            empirical_c2,
            drift,
        },
    })
}

/// Whether `-α` is a root as well, decided on the irreducible factor
/// holding `α`.
fn detect_mode(q: &IntPoly, alpha: &RootInterval) -> Result<GrowthMode> {
    if q.degree() == 0 {
        return Ok(GrowthMode::Single);
    }
    for (f, _) in factor_int_poly(q)?.factors {
        let holds_alpha = if alpha.exact {
            f.eval_rational(&alpha.lo).is_zero()
        } else {
            let (lo, hi) = (f.eval_rational(&alpha.lo), f.eval_rational(&alpha.hi));
            hi.is_zero() || lo.signum() != hi.signum()
        };
        if holds_alpha {
            let mirrored = f.negate_x().primitive();
            return Ok(if q.div_exact(&mirrored).is_some() {
                GrowthMode::PlusMinus
            } else {
                GrowthMode::Single
            });
        }
    }
    Ok(GrowthMode::Single)
}

/// `-P(r)/(r Q'(r))` for the generating function `P/Q` of `a`; `None` if
/// `r` is not a simple pole.
fn residue(a: &[BigInt], ann: &Annihilator, r: f64) -> Option<f64> {
    let q = ann.poly.reversal();
    let len = ann.poly.degree() + ann.offset;
    // P = (A * Q) mod x^len
    let mut p = vec![BigInt::zero(); len];
    for (m, slot) in p.iter_mut().enumerate() {
        for j in 0..=m.min(q.degree()) {
            *slot += q.coeff(j) * &a[m - j];
        }
    }
    let p = IntPoly::new(p);
    let dq = q.derivative().eval_f64(r);
    let scale = q
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
        .fold(0.0, f64::max);
    if dq.abs() <= 1e-9 * scale.max(1.0) {
        return None;
    }
    Some(-p.eval_f64(r) / (r * dq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn roots() {
        let r = dominant_root(&p(&[-2, 1])).unwrap().unwrap();
        assert!(r.exact);
        assert_eq!(r.lo, BigRational::from_integer(BigInt::from(2)));
        let r = dominant_root(&p(&[-1, -1, 0, 0, 0, 0, 0, 1])).unwrap().unwrap();
        assert!(r.width() <= 1e-12);
        assert!((r.midpoint() - 1.112_775_684_278_705_4).abs() < 1e-12);
        let r = dominant_root(&p(&[-1, 0, -1, 1])).unwrap().unwrap();
        assert!((r.midpoint() - 1.465_571_231_876_768).abs() < 1e-12);
        assert!(dominant_root(&p(&[1, 0, 1])).unwrap().is_none());
        // repeated roots and a root at 0
        let r = dominant_root(&(&p(&[-3, 1]).pow(2) * &p(&[0, 1]))).unwrap().unwrap();
        assert!(r.exact && r.midpoint() == 3.0);
    }

    #[test]
    fn endpoints_straddle_a_sign_change() {
        let f = p(&[-1, -1, 0, 0, 1]);
        let r = dominant_root(&f).unwrap().unwrap();
        let (lo, hi) = (f.eval_rational(&r.lo), f.eval_rational(&r.hi));
        assert!(lo.signum() != hi.signum() || hi.is_zero());
    }

    #[test]
    fn fit_three_times_two_to_the_n() {
        let a: Vec<BigInt> = (0..60).map(|n| BigInt::from(3) << n).collect();
        let alpha = dominant_root(&p(&[-2, 1])).unwrap().unwrap();
        let fit = asymptotic_fit(&a, &alpha).unwrap();
        assert_eq!(fit.mode, GrowthMode::Single);
        assert_eq!(fit.method, "residue");
        assert!((fit.c1 - 3.0).abs() < 1e-12);
        assert!((fit.empirical_c1 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fit_plus_minus() {
        // a(n) = 5·2^n + (-2)^n
        let a: Vec<BigInt> = (0..80)
            .map(|n: usize| {
                let power = BigInt::one() << n;
                let alternating = if n.is_multiple_of(2) {
                    power.clone()
                } else {
                    -power.clone()
                };
                power * 5 + alternating
            })
            .collect();
        let alpha = dominant_root(&p(&[-4, 0, 1])).unwrap().unwrap();
        let fit = asymptotic_fit(&a, &alpha).unwrap();
        assert_eq!(fit.mode, GrowthMode::PlusMinus);
        assert!((fit.c1 - 5.0).abs() < 1e-9);
        assert!((fit.c2.unwrap() - 1.0).abs() < 1e-9);
    }
}
