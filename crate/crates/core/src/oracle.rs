//! Brute-force ground truth.
//!
//! Words are generated depth-first with an incremental palindromic tree:
//! appending a letter creates at most one new palindrome, which is checked
//! against the constraint, and backtracking pops it again. Every family is
//! factorial, so a rejected prefix is never extended.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::construct::{ConstraintSpec, Tally};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::words::{PalTree, Word};

pub const DEFAULT_WORD_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Maximum number of words (prefixes) evaluated.
    pub budget: u64,
    /// How many accepted words of the target length to keep.
    pub witness_cap: usize,
    pub execution: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_WORD_BUDGET,
            witness_cap: 0,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub count: u128,
    pub witnesses: Vec<Word>,
}

/// Number of accepted words of length `n`.
pub fn brute_count(spec: &ConstraintSpec, n: usize) -> Result<OracleResult> {
    brute_count_with(spec, n, &OracleOptions::default())
}

pub fn brute_count_with(spec: &ConstraintSpec, n: usize, options: &OracleOptions) -> Result<OracleResult> {
    let run = search(spec, n, options)?;
    Ok(OracleResult {
        n,
        count: run.counts[n],
        witnesses: run.witnesses,
    })
}

/// Accepted-word counts for every length `0..=max_n` from a single search.
pub fn brute_counts(spec: &ConstraintSpec, max_n: usize) -> Result<Vec<u128>> {
    Ok(search(spec, max_n, &OracleOptions::default())?.counts)
}

pub fn brute_counts_with(spec: &ConstraintSpec, max_n: usize, options: &OracleOptions) -> Result<Vec<u128>> {
    Ok(search(spec, max_n, options)?.counts)
}

/// Counts words of length `n` by evaluating every word of `Σ_k^n` from
/// scratch. Only meant for tiny `n`, to check that pruning is sound.
pub fn unpruned_count(spec: &ConstraintSpec, n: usize) -> u128 {
    let k = spec.alphabet_size;
    let mut word = vec![0u8; n];
    let mut count = 0;
    loop {
        if spec.admits_word(&word) {
            count += 1;
        }
        // odometer increment
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            word[i] += 1;
            if (word[i] as usize) < k {
                break;
            }
            word[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Longest {
    Finite(usize),
    /// Some accepted word is longer than the depth limit.
    Infinite,
}

/// Length of the longest accepted word. A finite factorial language accepted
/// by an `r`-state automaton has no word of length `r` or more, so passing
/// the state count as `depth_limit` makes the `Infinite` answer exact.
pub fn longest_word(spec: &ConstraintSpec, depth_limit: usize) -> Result<Longest> {
    longest_word_with(spec, depth_limit, DEFAULT_WORD_BUDGET)
}

pub fn longest_word_with(spec: &ConstraintSpec, depth_limit: usize, budget: u64) -> Result<Longest> {
    if !spec.admits_empty() {
        return Err(Error::Input(format!("{spec} accepts no word at all")));
    }
    let spent = AtomicU64::new(0);
    let mut walker = Walker::new(spec, budget, &spent);
    let mut best = 0;
    // explicit stack of next symbol to try at each depth
    let mut next: Vec<u8> = vec![0];
    while let Some(&a) = next.last() {
        let depth = next.len() - 1;
        if a as usize == spec.alphabet_size {
            next.pop();
            if depth > 0 {
                walker.pop();
            }
            continue;
        }
        *next.last_mut().unwrap() += 1;
        if walker.push(a)? {
            best = best.max(depth + 1);
            if best > depth_limit {
                return Ok(Longest::Infinite);
            }
            next.push(0);
        }
    }
    Ok(Longest::Finite(best))
}

struct Walker<'a> {
    spec: &'a ConstraintSpec,
    tree: PalTree,
    tally: Tally,
    created: Vec<Option<usize>>,
    spent: &'a AtomicU64,
    budget: u64,
    pending: u64,
}

impl<'a> Walker<'a> {
    fn new(spec: &'a ConstraintSpec, budget: u64, spent: &'a AtomicU64) -> Walker<'a> {
        Walker {
            spec,
            tree: PalTree::new(spec.alphabet_size),
            tally: Tally::default(),
            created: Vec::new(),
            spent,
            budget,
            pending: 0,
        }
    }

    /// Appends `a` if the extended word is still accepted.
    fn push(&mut self, a: u8) -> Result<bool> {
        self.pending += 1;
        if self.pending == 4096 {
            self.flush()?;
        }
        let created = self.tree.push(a);
        if let Some(len) = created {
            let before = self.tally;
            self.tally.record(len);
            let text = self.tree.text();
            if !self.spec.admits_new(self.tally, &text[text.len() - len..]) {
                self.tally = before;
                self.tree.pop();
                return Ok(false);
            }
        }
        self.created.push(created);
        Ok(true)
    }

    fn pop(&mut self) {
        if let Some(len) = self.created.pop().expect("pop without push") {
            if len % 2 == 0 {
                self.tally.even -= 1;
            } else {
                self.tally.odd -= 1;
            }
        }
        self.tree.pop();
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.spent.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.budget {
            return Err(Error::Capacity(format!(
                "{}: oracle budget of {} word evaluations exhausted",
                self.spec, self.budget
            )));
        }
        Ok(())
    }

    fn word(&self) -> Word {
        Word::new(self.tree.text().to_vec(), self.spec.alphabet_size).expect("symbols in range")
    }
}

struct Run {
    counts: Vec<u128>,
    witnesses: Vec<Word>,
}

fn search(spec: &ConstraintSpec, max_n: usize, options: &OracleOptions) -> Result<Run> {
    let mut counts = vec![0u128; max_n + 1];
    if !spec.admits_empty() {
        return Ok(Run {
            counts,
            witnesses: Vec::new(),
        });
    }
    counts[0] = 1;
    let spent = AtomicU64::new(0);

    // Accepted prefixes at a split depth become independent subtrees.
    let k = spec.alphabet_size;
    let mut split = 0;
    while split < max_n && k.pow(split as u32) < 64 {
        split += 1;
    }
    let mut frontier: Vec<Vec<u8>> = vec![Vec::new()];
    let mut witnesses = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for depth in 1..=split {
        let mut walker = Walker::new(spec, options.budget, &spent);
        let mut next_frontier = Vec::new();
        for prefix in &frontier {
            for &s in prefix {
                assert!(walker.push(s)?, "frontier prefixes are accepted");
            }
            for a in 0..k as u8 {
                if walker.push(a)? {
                    if depth == max_n && witnesses.len() < options.witness_cap {
                        witnesses.push(walker.word());
                    }
                    next_frontier.push(walker.tree.text().to_vec());
                    walker.pop();
                }
            }
            for _ in prefix {
                walker.pop();
            }
        }
        walker.flush()?;
        counts[depth] = next_frontier.len() as u128;
        frontier = next_frontier;
    }

    let subtrees = options.execution.map(&frontier, |prefix| -> Result<Run> {
        let mut walker = Walker::new(spec, options.budget, &spent);
        for &s in prefix {
            walker.push(s)?;
        }
        let mut run = Run {
            counts: vec![0; max_n + 1],
            witnesses: Vec::new(),
        };
        descend(&mut walker, max_n, options.witness_cap, &mut run)?;
        walker.flush()?;
        Ok(run)
    });
    for sub in subtrees {
        let sub = sub?;
        for (c, s) in counts.iter_mut().zip(&sub.counts).skip(split + 1) {
            *c += s;
        }
        for w in sub.witnesses {
            if witnesses.len() < options.witness_cap {
                witnesses.push(w);
            }
        }
    }
    Ok(Run { counts, witnesses })
}

fn descend(walker: &mut Walker<'_>, max_n: usize, witness_cap: usize, run: &mut Run) -> Result<()> {
    let depth = walker.tree.text().len();
    if depth == max_n {
        return Ok(());
    }
    for a in 0..walker.spec.alphabet_size as u8 {
        if walker.push(a)? {
            run.counts[depth + 1] += 1;
            if depth + 1 == max_n && run.witnesses.len() < witness_cap {
                run.witnesses.push(walker.word());
            }
            descend(walker, max_n, witness_cap, run)?;
            walker.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::EmptyWord;

    #[test]
    fn known_values() {
        assert_eq!(
            brute_count(&ConstraintSpec::max_distinct(2, 11), 11).unwrap().count,
            292
        );
        assert_eq!(brute_count(&ConstraintSpec::max_distinct(3, 5), 5).unwrap().count, 42);
        assert_eq!(
            brute_counts(&ConstraintSpec::max_distinct(3, 5), 8).unwrap(),
            vec![1, 3, 9, 27, 81, 42, 54, 66, 78]
        );
        for spec in [ConstraintSpec::max_len(2, 0), ConstraintSpec::max_distinct(3, 1)] {
            assert_eq!(brute_count(&spec, 0).unwrap().count, 1);
        }
        assert_eq!(brute_count(&ConstraintSpec::max_distinct(2, 0), 0).unwrap().count, 0);
    }

    #[test]
    fn pruning_is_sound() {
        let specs = [
            ConstraintSpec::max_distinct(2, 5),
            ConstraintSpec::max_len(3, 2),
            ConstraintSpec::max_len_by_parity(2, 2, 3),
            ConstraintSpec::count_by_parity(2, 2, 3, EmptyWord::NotCounted),
        ];
        for spec in &specs {
            let counts = brute_counts(spec, 9).unwrap();
            for (n, &c) in counts.iter().enumerate() {
                assert_eq!(c, unpruned_count(spec, n), "{spec} n={n}");
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = ConstraintSpec::max_distinct(2, 10);
        let seq = brute_counts_with(
            &spec,
            16,
            &OracleOptions {
                execution: Execution::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, brute_counts(&spec, 16).unwrap());
    }

    #[test]
    fn witnesses_are_accepted_words_of_the_right_length() {
        let spec = ConstraintSpec::max_len(3, 1);
        let r = brute_count_with(
            &spec,
            4,
            &OracleOptions {
                witness_cap: 100,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.count, 6);
        assert_eq!(r.witnesses.len(), 6);
        assert!(r
            .witnesses
            .iter()
            .all(|w| w.len() == 4 && spec.admits_word(w.symbols())));
    }

    #[test]
    fn longest_words() {
        assert_eq!(
            longest_word(&ConstraintSpec::max_distinct(2, 8), 24).unwrap(),
            Longest::Finite(8)
        );
        assert!(matches!(
            longest_word(&ConstraintSpec::max_distinct(3, 3), 4).unwrap(),
            Longest::Finite(_)
        ));
        assert_eq!(
            longest_word(&ConstraintSpec::max_distinct(2, 9), 99).unwrap(),
            Longest::Infinite
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = brute_count_with(
            &ConstraintSpec::max_len(2, 100),
            30,
            &OracleOptions {
                budget: 10_000,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }
}
