//! Automata for the constraint families.
//!
//! [`build_direct`] explores `(window, seen)` states breadth-first from
//! `(ε, ∅)`: the window is a bounded suffix of the input read so far and
//! `seen` is the set of nonempty palindromic factors met so far. Every
//! palindromic factor first shows up as a palindromic suffix, and the first
//! violation of any of the caps is always a suffix no longer than the window
//! plus one letter, so inspecting suffixes of `window·a` is enough.
//!
//! [`build_avoidance`] is an independent route for allowed-set constraints:
//! forbid the minimal palindromes outside the set and run a keyword
//! automaton with failure links.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::words::{enumerate_palindromes, is_palindrome, minimal_elements, PalTree, Parity, Word};

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// Whether `ε` counts as one of the even palindromes in
/// [`Family::MaxCountByParity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum EmptyWord {
    #[default]
    Counted,
    NotCounted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Every palindromic factor lies in the set (which should contain `ε`).
    AllowedSet(BTreeSet<Word>),
    /// At most this many distinct palindromic factors, `ε` included.
    MaxDistinct(usize),
    /// No palindromic factor longer than this.
    MaxLen(usize),
    /// Caps on the length of even and odd palindromic factors.
    MaxLenByParity { even: usize, odd: usize },
    /// Caps on the number of even and odd palindromic factors.
    MaxCountByParity { even: usize, odd: usize, empty: EmptyWord },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub alphabet_size: usize,
    pub family: Family,
}

/// Nonempty palindromes met so far, split by parity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub even: usize,
    pub odd: usize,
}

impl Tally {
    pub fn record(&mut self, len: usize) {
        if len.is_multiple_of(2) {
            self.even += 1;
        } else {
            self.odd += 1;
        }
    }
}

impl ConstraintSpec {
    pub fn new(alphabet_size: usize, family: Family) -> Result<ConstraintSpec> {
        if alphabet_size == 0 || alphabet_size > crate::words::MAX_ALPHABET {
            return Err(Error::Input(format!("unsupported alphabet size {alphabet_size}")));
        }
        if let Family::AllowedSet(set) = &family {
            for w in set {
                if !w.is_palindrome() {
                    return Err(Error::Input(format!("allowed word {w} is not a palindrome")));
                }
                if w.symbols().iter().any(|&s| s as usize >= alphabet_size) {
                    return Err(Error::SymbolOutOfRange {
                        symbol: *w.symbols().iter().max().unwrap() as u32,
                        alphabet_size,
                    });
                }
            }
        }
        Ok(ConstraintSpec { alphabet_size, family })
    }

    /// `D_ℓ(Σ_k)`.
    pub fn max_distinct(k: usize, cap: usize) -> ConstraintSpec {
        ConstraintSpec::new(k, Family::MaxDistinct(cap)).expect("valid alphabet")
    }

    /// `E_ℓ(Σ_k)`.
    pub fn max_len(k: usize, cap: usize) -> ConstraintSpec {
        ConstraintSpec::new(k, Family::MaxLen(cap)).expect("valid alphabet")
    }

    /// `R_{ℓ,m}(Σ_k)`.
    pub fn max_len_by_parity(k: usize, even: usize, odd: usize) -> ConstraintSpec {
        ConstraintSpec::new(k, Family::MaxLenByParity { even, odd }).expect("valid alphabet")
    }

    /// `T_{ℓ,m}(Σ_k)` with `ε` counted as an even palindrome.
    pub fn max_count_by_parity(k: usize, even: usize, odd: usize) -> ConstraintSpec {
        ConstraintSpec::new(
            k,
            Family::MaxCountByParity {
                even,
                odd,
                empty: EmptyWord::Counted,
            },
        )
        .expect("valid alphabet")
    }

    /// `T_{ℓ,m}(Σ_k)` under an explicit `ε` convention.
    pub fn count_by_parity(k: usize, even: usize, odd: usize, empty: EmptyWord) -> ConstraintSpec {
        ConstraintSpec::new(k, Family::MaxCountByParity { even, odd, empty }).expect("valid alphabet")
    }

    pub fn allowed(k: usize, set: BTreeSet<Word>) -> Result<ConstraintSpec> {
        ConstraintSpec::new(k, Family::AllowedSet(set))
    }

    /// The allowed-set form of `E_ℓ`, `R_{ℓ,m}`; `None` for count families.
    pub fn as_allowed_set(&self) -> Option<BTreeSet<Word>> {
        let k = self.alphabet_size;
        match &self.family {
            Family::AllowedSet(s) => Some(s.clone()),
            Family::MaxLen(l) => Some(enumerate_palindromes(k, *l, Parity::All).into_iter().collect()),
            Family::MaxLenByParity { even, odd } => {
                let mut s: BTreeSet<Word> = enumerate_palindromes(k, *even, Parity::Even).into_iter().collect();
                s.extend(enumerate_palindromes(k, *odd, Parity::Odd));
                Some(s)
            }
            _ => None,
        }
    }

    /// Whether `ε` alone satisfies the constraint.
    pub fn admits_empty(&self) -> bool {
        match &self.family {
            Family::AllowedSet(s) => s.contains(&Word::empty(self.alphabet_size)),
            Family::MaxDistinct(l) => *l >= 1,
            Family::MaxLen(_) | Family::MaxLenByParity { .. } => true,
            Family::MaxCountByParity { even, empty, .. } => *empty == EmptyWord::NotCounted || *even >= 1,
        }
    }

    /// Whether a newly met palindrome keeps the constraint satisfied, given
    /// the tally of nonempty palindromes including the new one.
    pub fn admits_new(&self, after: Tally, palindrome: &[u8]) -> bool {
        let len = palindrome.len();
        match &self.family {
            Family::AllowedSet(s) => s.iter().any(|w| w.symbols() == palindrome),
            Family::MaxDistinct(l) => after.even + after.odd < *l,
            Family::MaxLen(l) => len <= *l,
            Family::MaxLenByParity { even, odd } => {
                if len.is_multiple_of(2) {
                    len <= *even
                } else {
                    len <= *odd
                }
            }
            Family::MaxCountByParity { even, odd, empty } => {
                let eps = usize::from(*empty == EmptyWord::Counted);
                after.even + eps <= *even && after.odd <= *odd
            }
        }
    }

    /// Direct evaluation on a word, without any automaton.
    pub fn admits_word(&self, symbols: &[u8]) -> bool {
        if !self.admits_empty() {
            return false;
        }
        let mut tree = PalTree::new(self.alphabet_size);
        let mut tally = Tally::default();
        for &s in symbols {
            if let Some(len) = tree.push(s) {
                tally.record(len);
                let text = tree.text();
                if !self.admits_new(tally, &text[text.len() - len..]) {
                    return false;
                }
            }
        }
        true
    }

    /// Cap on the number of distinct palindromes, `ε` included, if the
    /// family bounds it directly.
    pub fn palindrome_cap(&self) -> Option<usize> {
        match &self.family {
            Family::MaxDistinct(l) => Some(*l),
            Family::MaxCountByParity { even, odd, empty } => {
                Some(even + odd + usize::from(*empty == EmptyWord::NotCounted))
            }
            Family::AllowedSet(s) => Some(s.len()),
            _ => None,
        }
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.alphabet_size;
        match &self.family {
            Family::AllowedSet(s) => {
                let items: Vec<String> = s.iter().map(|w| format!("{w:?}")).collect();
                write!(f, "C_Σ{k}({{{}}})", items.join(","))
            }
            Family::MaxDistinct(l) => write!(f, "D_{l}(Σ_{k})"),
            Family::MaxLen(l) => write!(f, "E_{l}(Σ_{k})"),
            Family::MaxLenByParity { even, odd } => write!(f, "R_{{{even},{odd}}}(Σ_{k})"),
            Family::MaxCountByParity { even, odd, empty } => {
                let tag = if *empty == EmptyWord::NotCounted { "'" } else { "" };
                write!(f, "T{tag}_{{{even},{odd}}}(Σ_{k})")
            }
        }
    }
}

/// Length of the suffix window kept in search states.
pub fn window_bound(spec: &ConstraintSpec) -> usize {
    match &spec.family {
        Family::MaxDistinct(l) => (2 * l).saturating_sub(1),
        Family::MaxLen(l) => l + 1,
        Family::MaxLenByParity { even, odd } => even.max(odd) + 2,
        Family::MaxCountByParity { even, odd, empty } => {
            let even_len = match empty {
                EmptyWord::Counted => (2 * even).saturating_sub(2),
                EmptyWord::NotCounted => 2 * even,
            };
            even_len.max((2 * odd).saturating_sub(1))
        }
        Family::AllowedSet(s) => s.iter().map(Word::len).max().unwrap_or(0) + 2,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub state_budget: usize,
    /// Overrides [`window_bound`]; larger windows give the same language.
    pub window: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            state_budget: DEFAULT_STATE_BUDGET,
            window: None,
        }
    }
}

/// Output of [`build_direct`].
#[derive(Clone, Debug)]
pub struct Built {
    pub spec: ConstraintSpec,
    /// Explored automaton, complete, with a single dead state.
    pub unminimized: Dfa,
    pub minimized: Dfa,
}

impl Built {
    /// Explored search states, dead state excluded.
    pub fn explored_states(&self) -> usize {
        self.unminimized.live_state_count()
    }

    /// Minimal automaton size, dead state excluded.
    pub fn minimal_states(&self) -> usize {
        self.minimized.live_state_count()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct SearchState {
    window: Box<[u8]>,
    seen: Box<[u32]>,
}

/// Builds the automaton of `spec` by breadth-first search, then minimizes it.
pub fn build_direct(spec: &ConstraintSpec) -> Result<Built> {
    build_direct_with(spec, &BuildOptions::default())
}

pub fn build_direct_with(spec: &ConstraintSpec, options: &BuildOptions) -> Result<Built> {
    let unminimized = explore(spec, options)?;
    let minimized = unminimized.minimize();
    Ok(Built {
        spec: spec.clone(),
        unminimized,
        minimized,
    })
}

fn explore(spec: &ConstraintSpec, options: &BuildOptions) -> Result<Dfa> {
    let k = spec.alphabet_size;
    if !spec.admits_empty() {
        return Dfa::from_table(k, vec![0; k], 0, vec![false]);
    }
    let bound = options.window.unwrap_or_else(|| window_bound(spec));

    let mut pal_ids: HashMap<Box<[u8]>, u32> = HashMap::new();
    let mut pal_lens: Vec<usize> = Vec::new();
    let mut index: HashMap<SearchState, u32> = HashMap::new();
    let mut states: Vec<SearchState> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();
    const DEAD: u32 = u32::MAX;

    let initial = SearchState {
        window: Box::new([]),
        seen: Box::new([]),
    };
    index.insert(initial.clone(), 0);
    states.push(initial);
    let mut queue = VecDeque::from([0u32]);
    let mut buf: Vec<u8> = Vec::with_capacity(bound + 1);
    let mut fresh: Vec<u32> = Vec::new();

    while let Some(id) = queue.pop_front() {
        let row_start = delta.len();
        delta.resize(row_start + k, DEAD);
        for a in 0..k as u8 {
            let state = &states[id as usize];
            buf.clear();
            buf.extend_from_slice(&state.window);
            buf.push(a);
            let mut tally = Tally::default();
            for &p in state.seen.iter() {
                tally.record(pal_lens[p as usize]);
            }
            fresh.clear();
            let mut ok = true;
            for len in 1..=buf.len() {
                let suffix = &buf[buf.len() - len..];
                if !is_palindrome(suffix) {
                    continue;
                }
                let pid = match pal_ids.get(suffix) {
                    Some(&pid) => pid,
                    None => {
                        let pid = pal_lens.len() as u32;
                        pal_ids.insert(suffix.into(), pid);
                        pal_lens.push(len);
                        pid
                    }
                };
                if state.seen.binary_search(&pid).is_ok() {
                    continue;
                }
                tally.record(len);
                if !spec.admits_new(tally, suffix) {
                    ok = false;
                    break;
                }
                fresh.push(pid);
            }
            if !ok {
                continue;
            }
            let mut seen: Vec<u32> = state.seen.to_vec();
            seen.extend_from_slice(&fresh);
            seen.sort_unstable();
            let skip = buf.len().saturating_sub(bound);
            let next = SearchState {
                window: buf[skip..].into(),
                seen: seen.into_boxed_slice(),
            };
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = states.len() as u32;
                    if states.len() >= options.state_budget {
                        return Err(Error::Capacity(format!(
                            "{spec}: more than {} search states",
                            options.state_budget
                        )));
                    }
                    index.insert(next.clone(), t);
                    states.push(next);
                    queue.push_back(t);
                    t
                }
            };
            delta[row_start + a as usize] = target;
        }
    }

    let live = states.len();
    let mut accepting = vec![true; live];
    if delta.contains(&DEAD) {
        let dead = live as u32;
        for t in delta.iter_mut().filter(|t| **t == DEAD) {
            *t = dead;
        }
        delta.extend(std::iter::repeat_n(dead, k));
        accepting.push(false);
    }
    Dfa::from_table(k, delta, 0, accepting)
}

/// Minimal palindromes (under the factor order) that an allowed set forbids.
pub fn forbidden_set(allowed: &BTreeSet<Word>, k: usize) -> Result<BTreeSet<Word>> {
    for w in allowed {
        if !w.is_palindrome() {
            return Err(Error::Input(format!("{w} is not a palindrome")));
        }
    }
    let longest = allowed.iter().map(Word::len).max().unwrap_or(0);
    let outside: Vec<Word> = enumerate_palindromes(k, longest + 2, Parity::All)
        .into_iter()
        .filter(|p| !allowed.contains(p))
        .collect();
    Ok(minimal_elements(&outside))
}

/// Automaton for the words having no factor in `forbidden`.
pub fn build_avoidance(forbidden: &BTreeSet<Word>, k: usize) -> Result<Dfa> {
    if k == 0 {
        return Err(Error::Input("alphabet must be nonempty".into()));
    }
    if forbidden.iter().any(Word::is_empty) {
        return Dfa::from_table(k, vec![0; k], 0, vec![false]);
    }
    const NONE: u32 = u32::MAX;
    // keyword trie
    let mut child: Vec<u32> = vec![NONE; k];
    let mut terminal = vec![false];
    for w in forbidden {
        let mut node = 0usize;
        for &s in w.symbols() {
            if s as usize >= k {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    alphabet_size: k,
                });
            }
            let slot = node * k + s as usize;
            if child[slot] == NONE {
                child[slot] = terminal.len() as u32;
                terminal.push(false);
                child.extend(std::iter::repeat_n(NONE, k));
            }
            node = child[slot] as usize;
        }
        terminal[node] = true;
    }
    // failure links in BFS order; `child` becomes the complete goto function
    let n = terminal.len();
    let mut fail = vec![0u32; n];
    let mut queue = VecDeque::new();
    for slot in child.iter_mut().take(k) {
        match *slot {
            NONE => *slot = 0,
            c => {
                fail[c as usize] = 0;
                queue.push_back(c);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        let u = u as usize;
        terminal[u] |= terminal[fail[u] as usize];
        for a in 0..k {
            let slot = u * k + a;
            let via_fail = child[fail[u] as usize * k + a];
            match child[slot] {
                NONE => child[slot] = via_fail,
                c => {
                    fail[c as usize] = via_fail;
                    queue.push_back(c);
                }
            }
        }
    }
    // collapse match states into one dead state
    let mut rename = vec![0u32; n];
    let mut live = 0u32;
    for u in 0..n {
        if !terminal[u] {
            rename[u] = live;
            live += 1;
        }
    }
    let dead = live;
    let mut delta = Vec::with_capacity((live as usize + 1) * k);
    for u in (0..n).filter(|&u| !terminal[u]) {
        for a in 0..k {
            let t = child[u * k + a] as usize;
            delta.push(if terminal[t] { dead } else { rename[t] });
        }
    }
    delta.extend(std::iter::repeat_n(dead, k));
    let mut accepting = vec![true; live as usize];
    accepting.push(false);
    Dfa::from_table(k, delta, 0, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::isomorphic;

    fn set(list: &[&str]) -> BTreeSet<Word> {
        list.iter().map(|s| Word::from_digits(s).unwrap()).collect()
    }

    fn all_words(k: usize, n: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..k.pow(n as u32)).map(move |mut i| {
            let mut w = vec![0u8; n];
            for s in w.iter_mut().rev() {
                *s = (i % k) as u8;
                i /= k;
            }
            w
        })
    }

    fn naive_admits(spec: &ConstraintSpec, w: &[u8]) -> bool {
        let pal = crate::words::naive_palindromic_factors(&Word::new(w.to_vec(), spec.alphabet_size).unwrap());
        match &spec.family {
            Family::AllowedSet(s) => pal.palindromes().iter().all(|p| s.contains(p)),
            Family::MaxDistinct(l) => pal.len() <= *l,
            Family::MaxLen(l) => pal.max_len() <= *l,
            Family::MaxLenByParity { even, odd } => pal
                .palindromes()
                .iter()
                .all(|p| p.len() <= if p.len() % 2 == 0 { *even } else { *odd }),
            Family::MaxCountByParity { even, odd, empty } => {
                let e = pal.even_count() - usize::from(*empty == EmptyWord::NotCounted);
                e <= *even && pal.odd_count() <= *odd
            }
        }
    }

    #[test]
    fn window_bounds() {
        assert_eq!(window_bound(&ConstraintSpec::max_distinct(2, 11)), 21);
        assert_eq!(window_bound(&ConstraintSpec::max_len(2, 0)), 1);
        assert_eq!(window_bound(&ConstraintSpec::max_count_by_parity(3, 1, 5)), 9);
    }

    #[test]
    fn forbidden_sets() {
        let sigma4 = set(&["", "0", "1", "2", "3"]);
        assert_eq!(
            forbidden_set(&sigma4, 4).unwrap(),
            set(&[
                "00", "11", "22", "33", "010", "020", "030", "101", "121", "131", "202", "212", "232", "303", "313",
                "323"
            ])
        );
        let e2 = ConstraintSpec::max_len(2, 2).as_allowed_set().unwrap();
        assert_eq!(
            forbidden_set(&e2, 2).unwrap(),
            set(&["000", "010", "101", "111", "0110", "1001"])
        );
        assert_eq!(forbidden_set(&set(&[""]), 1).unwrap(), set(&["0"]));
    }

    #[test]
    fn avoidance_examples() {
        let alt = build_avoidance(&set(&["00", "11"]), 2).unwrap().minimize();
        assert_eq!(alt.live_state_count(), 3);
        for n in 0..=8 {
            for w in all_words(2, n) {
                assert_eq!(alt.accepts_symbols(&w), w.windows(2).all(|p| p[0] != p[1]));
            }
        }
        let only_empty = build_avoidance(&set(&["0"]), 1).unwrap().minimize();
        assert!(only_empty.accepts_symbols(&[]));
        assert!(!only_empty.accepts_symbols(&[0]));
        assert_eq!(only_empty.live_state_count(), 1);
    }

    #[test]
    fn small_minimized_sizes() {
        let cases = [
            (ConstraintSpec::max_distinct(3, 3), 3),
            (ConstraintSpec::max_distinct(3, 4), 18),
            (ConstraintSpec::max_distinct(2, 8), 23),
            (ConstraintSpec::max_len(3, 1), 10),
            (ConstraintSpec::max_len(3, 2), 19),
        ];
        for (spec, expected) in cases {
            let built = build_direct(&spec).unwrap();
            assert_eq!(built.minimal_states(), expected, "{spec}");
        }
    }

    #[test]
    fn explored_states_match_reported_diagnostics() {
        assert_eq!(
            build_direct(&ConstraintSpec::max_distinct(3, 3))
                .unwrap()
                .explored_states(),
            13
        );
        assert_eq!(
            build_direct(&ConstraintSpec::max_len(3, 1)).unwrap().explored_states(),
            16
        );
    }

    #[test]
    fn direct_matches_naive_evaluation() {
        let specs = [
            ConstraintSpec::max_distinct(2, 6),
            ConstraintSpec::max_distinct(3, 5),
            ConstraintSpec::max_len(2, 3),
            ConstraintSpec::max_len(3, 2),
            ConstraintSpec::max_len_by_parity(2, 2, 3),
            ConstraintSpec::max_len_by_parity(3, 0, 3),
            ConstraintSpec::max_count_by_parity(2, 3, 4),
            ConstraintSpec::max_count_by_parity(3, 1, 5),
            ConstraintSpec::count_by_parity(2, 2, 4, EmptyWord::NotCounted),
            ConstraintSpec::allowed(3, set(&["", "0", "1", "2", "010"])).unwrap(),
        ];
        for spec in &specs {
            let built = build_direct(spec).unwrap();
            let max_n = if spec.alphabet_size == 2 { 12 } else { 8 };
            for n in 0..=max_n {
                for w in all_words(spec.alphabet_size, n) {
                    let expected = naive_admits(spec, &w);
                    assert_eq!(spec.admits_word(&w), expected, "{spec} {w:?}");
                    assert_eq!(built.unminimized.accepts_symbols(&w), expected, "{spec} {w:?}");
                    assert_eq!(built.minimized.accepts_symbols(&w), expected, "{spec} {w:?}");
                }
            }
        }
    }

    #[test]
    fn larger_window_gives_same_language() {
        let specs = [
            ConstraintSpec::max_distinct(2, 7),
            ConstraintSpec::max_len(2, 4),
            ConstraintSpec::max_len_by_parity(2, 2, 5),
            ConstraintSpec::max_count_by_parity(2, 5, 4),
            ConstraintSpec::max_count_by_parity(3, 1, 5),
            ConstraintSpec::count_by_parity(2, 5, 4, EmptyWord::NotCounted),
            ConstraintSpec::count_by_parity(3, 1, 4, EmptyWord::NotCounted),
        ];
        for spec in &specs {
            let base = build_direct(spec).unwrap();
            let wide = build_direct_with(
                spec,
                &BuildOptions {
                    window: Some(window_bound(spec) + 3),
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(isomorphic(&base.minimized, &wide.minimized).unwrap(), "{spec}");
        }
    }

    #[test]
    fn allowed_set_routes_agree() {
        let specs = [
            ConstraintSpec::max_len(3, 2),
            ConstraintSpec::max_len(2, 4),
            ConstraintSpec::max_len_by_parity(2, 2, 5),
            ConstraintSpec::allowed(4, set(&["", "0", "1", "2", "3"])).unwrap(),
        ];
        for spec in &specs {
            let allowed = spec.as_allowed_set().unwrap();
            let via_forbidden = build_avoidance(
                &forbidden_set(&allowed, spec.alphabet_size).unwrap(),
                spec.alphabet_size,
            )
            .unwrap()
            .minimize();
            let direct = build_direct(spec).unwrap().minimized;
            assert!(isomorphic(&direct, &via_forbidden).unwrap(), "{spec}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_direct_with(
            &ConstraintSpec::max_distinct(2, 9),
            &BuildOptions {
                state_budget: 50,
                window: None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }

    #[test]
    fn empty_languages() {
        let none = build_direct(&ConstraintSpec::max_distinct(2, 0)).unwrap();
        assert_eq!(none.minimal_states(), 0);
        assert!(!none.minimized.accepts_symbols(&[]));
        let not_eps = ConstraintSpec::allowed(2, set(&["0"])).unwrap();
        assert!(!build_direct(&not_eps).unwrap().minimized.accepts_symbols(&[]));
    }
}
