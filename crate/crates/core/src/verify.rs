//! State transformations and perturbed-symmetry words.
//!
//! A word `w` acts on the states of a DFA by `q -> δ(q, w)`. For
//! `X_{n+1} = X_n s X_n^R` the action of `X_{n+1}` is a product of the
//! actions of `X_n`, `s` and `X_n^R`, so the transformations can be
//! followed for any `n` without writing the words out.

use serde::Serialize;

use crate::analyze::Morphism;
use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::words::{reverse, Word};

/// Default length cap for [`perturbed_symmetry`].
pub const DEFAULT_WORD_BUDGET: usize = 1 << 28;

/// `τ_w`: state `q` goes to `target[q] = δ(q, w)`. Covers every state,
/// the dead one included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct StateTransformation {
    pub target: Vec<u32>,
}

impl StateTransformation {
    pub fn identity(states: usize) -> StateTransformation {
        StateTransformation {
            target: (0..states as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn apply(&self, q: u32) -> u32 {
        self.target[q as usize]
    }
}

pub fn transform(d: &Dfa, w: &Word) -> Result<StateTransformation> {
    if let Some(&s) = w.symbols().iter().find(|&&s| s as usize >= d.alphabet_size()) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as u32,
            alphabet_size: d.alphabet_size(),
        });
    }
    Ok(transform_symbols(d, w.symbols()))
}

fn transform_symbols(d: &Dfa, w: &[u8]) -> StateTransformation {
    StateTransformation {
        target: (0..d.state_count() as u32).map(|q| d.run(q, w)).collect(),
    }
}

/// `q -> t(s(q))`: the word of `s` is read first.
pub fn compose(s: &StateTransformation, t: &StateTransformation) -> Result<StateTransformation> {
    if s.len() != t.len() {
        return Err(Error::Input(format!(
            "transformations act on {} and {} states",
            s.len(),
            t.len()
        )));
    }
    Ok(StateTransformation {
        target: s.target.iter().map(|&q| t.target[q as usize]).collect(),
    })
}

/// `X_0 = seed`, `X_{j+1} = X_j infix X_j^R`; returns `X_n`.
pub fn perturbed_symmetry(seed: &Word, infix: &Word, n: usize) -> Result<Word> {
    perturbed_symmetry_within(seed, infix, n, DEFAULT_WORD_BUDGET)
}

pub fn perturbed_symmetry_within(seed: &Word, infix: &Word, n: usize, max_len: usize) -> Result<Word> {
    let mut len = seed.len() as u128;
    for _ in 0..n {
        len = 2 * len + infix.len() as u128;
        if len > max_len as u128 {
            return Err(Error::Capacity(format!(
                "X_{n} is longer than the budget of {max_len} letters"
            )));
        }
    }
    let mut x = seed.clone();
    for _ in 0..n {
        x = x.concat(infix).concat(&reverse(&x));
    }
    Ok(x)
}

/// Length of `X_n` without building it.
pub fn perturbed_symmetry_len(seed_len: usize, infix_len: usize, n: usize) -> u128 {
    (0..n).fold(seed_len as u128, |len, _| 2 * len + infix_len as u128)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizationStep {
    pub n: usize,
    /// `|X_n|`.
    pub length: u128,
    /// `δ(start, X_n)` is accepting.
    pub accepted: bool,
    /// `τ_{X_n} = τ_{X_n^R}`.
    pub reversal_equal: bool,
    /// `τ_{X_n} = τ_{X_{n+1}}`, for `n < n_max`.
    pub equals_next: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub n_max: usize,
    pub steps: Vec<StabilizationStep>,
    /// Least `n` with `τ_{X_n} = τ_{X_{n+1}}`.
    pub stabilized_at: Option<usize>,
    /// Equality, once reached, persists up to `n_max`.
    pub stays_stable: bool,
    /// `τ_{X_n} = τ_{X_n^R}` for every `1 <= n <= n_max`.
    pub reversal_equal_from_one: bool,
    pub all_accepted: bool,
}

/// Follows `τ_{X_n}` and `τ_{X_n^R}` for `n <= n_max`.
pub fn check_stabilization(d: &Dfa, seed: &Word, infix: &Word, n_max: usize) -> Result<StabilizationReport> {
    let tau = |w: &Word| transform(d, w);
    let t_infix = tau(infix)?;
    let t_infix_rev = tau(&reverse(infix))?;
    let mut fwd = vec![tau(seed)?];
    let mut rev = vec![tau(&reverse(seed))?];
    for j in 0..n_max {
        // X_{j+1} = X_j s X_j^R and X_{j+1}^R = X_j s^R X_j^R
        let f = compose(&compose(&fwd[j], &t_infix)?, &rev[j])?;
        let r = compose(&compose(&fwd[j], &t_infix_rev)?, &rev[j])?;
        fwd.push(f);
        rev.push(r);
    }
    let steps: Vec<StabilizationStep> = (0..=n_max)
        .map(|n| StabilizationStep {
            n,
            length: perturbed_symmetry_len(seed.len(), infix.len(), n),
            accepted: d.is_accepting(fwd[n].apply(d.start())),
            reversal_equal: fwd[n] == rev[n],
            equals_next: (n < n_max).then(|| fwd[n] == fwd[n + 1]),
        })
        .collect();
    let stabilized_at = steps.iter().find(|s| s.equals_next == Some(true)).map(|s| s.n);
    let stays_stable = match stabilized_at {
        Some(m) => steps[m..].iter().all(|s| s.equals_next != Some(false)),
        None => true,
    };
    Ok(StabilizationReport {
        n_max,
        stabilized_at,
        stays_stable,
        reversal_equal_from_one: steps.iter().skip(1).all(|s| s.reversal_equal),
        all_accepted: steps.iter().all(|s| s.accepted),
        steps,
    })
}

/// First `n` letters of the Thue–Morse word.
pub fn thue_morse(n: usize) -> Word {
    let symbols = (0..n).map(|i| (i.count_ones() % 2) as u8).collect();
    Word::new(symbols, 2).expect("binary")
}

pub fn apply_morphism(h: &Morphism, w: &Word) -> Result<Word> {
    h.apply(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_direct, ConstraintSpec};

    fn w(s: &str, k: usize) -> Word {
        Word::parse(s, k).unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(thue_morse(4), w("0110", 2));
        assert_eq!(thue_morse(8), w("01101001", 2));
        assert_eq!(perturbed_symmetry(&w("01", 4), &w("23", 4), 1).unwrap(), w("012310", 4));
        let g1 = perturbed_symmetry(&w("001101000110", 2), &w("01", 2), 1).unwrap();
        assert_eq!(g1.len(), 26);
        assert_eq!(perturbed_symmetry_len(12, 2, 4), 222);
        assert!(matches!(
            perturbed_symmetry_within(&w("01", 2), &w("0", 2), 10, 100),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn thue_morse_is_cube_free() {
        let t = thue_morse(2000);
        let s = t.symbols();
        for p in 1..=s.len() / 3 {
            for i in 0..=s.len() - 3 * p {
                assert!(!(s[i..i + p] == s[i + p..i + 2 * p] && s[i..i + p] == s[i + 2 * p..i + 3 * p]));
            }
        }
    }

    #[test]
    fn transformations() {
        let d = build_direct(&ConstraintSpec::max_distinct(2, 9)).unwrap().minimized;
        let id = transform(&d, &Word::empty(2)).unwrap();
        assert_eq!(id, StateTransformation::identity(d.state_count()));
        let (u, v) = (w("0010", 2), w("110", 2));
        assert_eq!(
            transform(&d, &u.concat(&v)).unwrap(),
            compose(&transform(&d, &u).unwrap(), &transform(&d, &v).unwrap()).unwrap()
        );
        assert!(compose(&id, &StateTransformation::identity(3)).is_err());
        assert!(transform(&d, &w("2", 3)).is_err());
    }

    #[test]
    fn degenerate_stabilization() {
        let d = build_direct(&ConstraintSpec::max_distinct(1, 1)).unwrap().minimized;
        let r = check_stabilization(&d, &Word::empty(1), &w("0", 1), 3).unwrap();
        assert_eq!(r.steps.len(), 4);
        assert!(r.steps[0].accepted);
        assert!(!r.all_accepted);
    }
}
