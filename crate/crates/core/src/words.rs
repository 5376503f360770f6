//! Finite words over `{0, …, k-1}` and their palindromic factors.
//!
//! Distinct palindromic factors are computed with a palindromic tree
//! (eertree). The tree supports pushing and popping letters so that a
//! depth-first walk over the word space can maintain it incrementally.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet the crate supports; words serialize as digit strings.
pub const MAX_ALPHABET: usize = 10;

/// A finite word over `Σ_k = {0, …, k-1}`.
///
/// Equality, hashing and ordering look at the symbols only. Words are
/// ordered by length first, then lexicographically.
#[derive(Clone, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet_size: u8,
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet_size: usize) -> Result<Word> {
        check_alphabet(alphabet_size)?;
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as u32,
                alphabet_size,
            });
        }
        Ok(Word {
            symbols,
            alphabet_size: alphabet_size as u8,
        })
    }

    pub fn empty(alphabet_size: usize) -> Word {
        Word {
            symbols: Vec::new(),
            alphabet_size: alphabet_size.clamp(1, MAX_ALPHABET) as u8,
        }
    }

    /// Parses a digit string. `""` and `"ε"` both denote the empty word.
    pub fn parse(text: &str, alphabet_size: usize) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "\"\"" {
            check_alphabet(alphabet_size)?;
            return Ok(Word::empty(alphabet_size));
        }
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Input(format!("'{c}' is not a digit in word \"{text}\"")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(symbols, alphabet_size)
    }

    /// Parses a digit string, taking the alphabet to be `{0, …, max digit}`.
    pub fn from_digits(text: &str) -> Result<Word> {
        let k = text
            .chars()
            .filter_map(|c| c.to_digit(10))
            .max()
            .map_or(1, |d| d as usize + 1);
        Word::parse(text, k)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size as usize
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.symbols)
    }

    /// Same symbols, reinterpreted over another alphabet.
    pub fn with_alphabet(&self, alphabet_size: usize) -> Result<Word> {
        Word::new(self.symbols.clone(), alphabet_size)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Word {
            symbols,
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
        }
    }

    /// Whether `self` occurs as a contiguous factor of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        is_factor(&self.symbols, &other.symbols)
    }
}

fn check_alphabet(k: usize) -> Result<()> {
    if k == 0 || k > MAX_ALPHABET {
        return Err(Error::Input(format!(
            "alphabet size must be in 1..={MAX_ALPHABET}, got {k}"
        )));
    }
    Ok(())
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

pub fn reverse(w: &Word) -> Word {
    let mut symbols = w.symbols.clone();
    symbols.reverse();
    Word {
        symbols,
        alphabet_size: w.alphabet_size,
    }
}

pub fn is_palindrome(s: &[u8]) -> bool {
    s.iter().eq(s.iter().rev())
}

pub fn is_factor(needle: &[u8], haystack: &[u8]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

/// Length parity filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Parity {
    #[default]
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, len: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => len.is_multiple_of(2),
            Parity::Odd => len % 2 == 1,
        }
    }
}

/// The set of distinct palindromic factors of a word, `ε` included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalFacSet {
    palindromes: BTreeSet<Word>,
    even_count: usize,
    odd_count: usize,
}

impl PalFacSet {
    pub fn from_set(palindromes: BTreeSet<Word>) -> PalFacSet {
        debug_assert!(palindromes.iter().all(Word::is_palindrome));
        let even_count = palindromes.iter().filter(|p| p.len() % 2 == 0).count();
        let odd_count = palindromes.len() - even_count;
        PalFacSet {
            palindromes,
            even_count,
            odd_count,
        }
    }

    pub fn palindromes(&self) -> &BTreeSet<Word> {
        &self.palindromes
    }

    pub fn len(&self) -> usize {
        self.palindromes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.palindromes.is_empty()
    }

    /// Even palindromes, `ε` included.
    pub fn even_count(&self) -> usize {
        self.even_count
    }

    pub fn odd_count(&self) -> usize {
        self.odd_count
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.palindromes.contains(w)
    }

    pub fn max_len(&self) -> usize {
        self.palindromes.iter().map(Word::len).max().unwrap_or(0)
    }
}

const NONE: u32 = u32::MAX;
const IMAGINARY: u32 = 0;
const EMPTY: u32 = 1;

/// Palindromic tree over `{0, …, k-1}` with undo support.
///
/// Node 0 is the imaginary root of length -1, node 1 is `ε`. Every other
/// node is one distinct nonempty palindromic factor of the current word.
#[derive(Clone, Debug)]
pub struct PalTree {
    k: usize,
    text: Vec<u8>,
    len: Vec<i32>,
    link: Vec<u32>,
    /// Index in `text` of the last symbol of the first occurrence.
    end: Vec<u32>,
    next: Vec<u32>,
    last: u32,
    history: Vec<Step>,
}

#[derive(Clone, Copy, Debug)]
struct Step {
    prev_last: u32,
    created: bool,
    parent: u32,
}

impl PalTree {
    pub fn new(alphabet_size: usize) -> PalTree {
        let k = alphabet_size.max(1);
        PalTree {
            k,
            text: Vec::new(),
            len: vec![-1, 0],
            link: vec![IMAGINARY, IMAGINARY],
            end: vec![0, 0],
            next: vec![NONE; 2 * k],
            last: EMPTY,
            history: Vec::new(),
        }
    }

    pub fn from_symbols(alphabet_size: usize, symbols: &[u8]) -> PalTree {
        let mut tree = PalTree::new(alphabet_size);
        for &s in symbols {
            tree.push(s);
        }
        tree
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Number of distinct palindromic factors, `ε` included.
    pub fn distinct_count(&self) -> usize {
        self.len.len() - 1
    }

    /// Length of the longest palindromic suffix of the current word.
    pub fn longest_suffix_len(&self) -> usize {
        self.len[self.last as usize].max(0) as usize
    }

    fn suffix_fits(&self, node: u32, symbol: u8) -> bool {
        let i = self.text.len() as i64 - 1;
        let j = i - self.len[node as usize] as i64 - 1;
        j >= 0 && self.text[j as usize] == symbol
    }

    fn fitting_suffix(&self, mut node: u32, symbol: u8) -> u32 {
        while node != IMAGINARY && !self.suffix_fits(node, symbol) {
            node = self.link[node as usize];
        }
        node
    }

    /// Appends a symbol. Returns the length of the new palindrome if the
    /// symbol created one, i.e. if the longest palindromic suffix is new.
    pub fn push(&mut self, symbol: u8) -> Option<usize> {
        assert!((symbol as usize) < self.k, "symbol out of range");
        self.text.push(symbol);
        let parent = self.fitting_suffix(self.last, symbol);
        let slot = parent as usize * self.k + symbol as usize;
        let existing = self.next[slot];
        if existing != NONE {
            self.history.push(Step {
                prev_last: self.last,
                created: false,
                parent,
            });
            self.last = existing;
            return None;
        }
        let new_len = self.len[parent as usize] + 2;
        let link = if new_len == 1 {
            EMPTY
        } else {
            let p = self.fitting_suffix(self.link[parent as usize], symbol);
            self.next[p as usize * self.k + symbol as usize]
        };
        let id = self.len.len() as u32;
        self.len.push(new_len);
        self.link.push(link);
        self.end.push(self.text.len() as u32 - 1);
        self.next.extend(std::iter::repeat_n(NONE, self.k));
        self.next[slot] = id;
        self.history.push(Step {
            prev_last: self.last,
            created: true,
            parent,
        });
        self.last = id;
        Some(new_len as usize)
    }

    /// Undoes the most recent `push`.
    pub fn pop(&mut self) -> Option<u8> {
        let step = self.history.pop()?;
        let symbol = self.text.pop().expect("history and text out of sync");
        if step.created {
            self.len.pop();
            self.link.pop();
            self.end.pop();
            self.next.truncate(self.next.len() - self.k);
            self.next[step.parent as usize * self.k + symbol as usize] = NONE;
        }
        self.last = step.prev_last;
        Some(symbol)
    }

    /// Nonempty palindromes as `(start, len)` slices of the text, in creation order.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (2..self.len.len()).map(move |i| {
            let len = self.len[i] as usize;
            (self.end[i] as usize + 1 - len, len)
        })
    }

    pub fn palindromes(&self) -> PalFacSet {
        let k = self.k;
        let mut set: BTreeSet<Word> = self
            .nodes()
            .map(|(start, len)| Word {
                symbols: self.text[start..start + len].to_vec(),
                alphabet_size: k as u8,
            })
            .collect();
        set.insert(Word::empty(k));
        PalFacSet::from_set(set)
    }
}

/// Distinct palindromic factors of `w`, `ε` included.
pub fn palindromic_factors(w: &Word) -> PalFacSet {
    PalTree::from_symbols(w.alphabet_size(), &w.symbols).palindromes()
}

/// Cubic-time reference for [`palindromic_factors`].
pub fn naive_palindromic_factors(w: &Word) -> PalFacSet {
    let s = &w.symbols;
    let mut set = BTreeSet::new();
    set.insert(Word::empty(w.alphabet_size()));
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            if is_palindrome(&s[i..j]) {
                set.insert(Word {
                    symbols: s[i..j].to_vec(),
                    alphabet_size: w.alphabet_size,
                });
            }
        }
    }
    PalFacSet::from_set(set)
}

/// All palindromes over `Σ_k` of length at most `max_len` matching `parity`,
/// in length-then-lexicographic order.
pub fn enumerate_palindromes(k: usize, max_len: usize, parity: Parity) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        if !parity.admits(len) {
            continue;
        }
        let half = len.div_ceil(2);
        for index in 0..k.pow(half as u32) {
            let mut digits = vec![0u8; half];
            let mut rest = index;
            for d in digits.iter_mut().rev() {
                *d = (rest % k) as u8;
                rest /= k;
            }
            let mut symbols = digits.clone();
            symbols.extend(digits[..len / 2].iter().rev());
            out.push(Word {
                symbols,
                alphabet_size: k as u8,
            });
        }
    }
    out
}

/// Elements of `set` having no other element of `set` as a factor.
pub fn minimal_elements<'a, I>(set: I) -> BTreeSet<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let sorted: BTreeSet<&Word> = set.into_iter().collect();
    let mut kept: Vec<&Word> = Vec::new();
    for &x in &sorted {
        if !kept.iter().any(|y| y.is_factor_of(x)) {
            kept.push(x);
        }
    }
    kept.into_iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn words(list: &[&str]) -> BTreeSet<Word> {
        list.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&w("001101")), w("101100"));
        assert_eq!(reverse(&Word::empty(2)), Word::empty(2));
        assert_eq!(reverse(&w("001101000110")), w("011000101100"));
    }

    #[test]
    fn equality_ignores_alphabet() {
        assert_eq!(Word::parse("0", 2).unwrap(), Word::parse("0", 3).unwrap());
        assert!(Word::parse("3", 3).is_err());
        assert!(Word::parse("0a", 3).is_err());
        assert_eq!(Word::parse("ε", 2).unwrap().len(), 0);
    }

    #[test]
    fn palfac_examples() {
        let empty = palindromic_factors(&Word::empty(2));
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.even_count(), 1);
        let p = palindromic_factors(&w("0011"));
        assert_eq!(p.palindromes(), &words(&["", "0", "1", "00", "11"]));
        assert_eq!((p.even_count(), p.odd_count()), (3, 2));
    }

    #[test]
    fn palfac_of_g2_has_thirteen() {
        // G_0 = 001101000110, G_{n+1} = G_n 01 G_n^R
        let g0 = w("001101000110");
        let g1 = g0.concat(&w("01")).concat(&reverse(&g0));
        let g2 = g1.concat(&w("01")).concat(&reverse(&g1));
        assert_eq!(naive_palindromic_factors(&g2).len(), 13);
        assert_eq!(palindromic_factors(&g2).len(), 13);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_palindromes(2, 1, Parity::All), vec![w(""), w("0"), w("1")]);
        assert_eq!(enumerate_palindromes(2, 2, Parity::Even), vec![w(""), w("00"), w("11")]);
        assert_eq!(enumerate_palindromes(2, 5, Parity::All).len(), 21);
        for k in 1..=4usize {
            for max_len in 0..=7u32 {
                let expected: usize = (0..=max_len).map(|j: u32| k.pow(j.div_ceil(2))).sum();
                let got = enumerate_palindromes(k, max_len as usize, Parity::All);
                assert_eq!(got.len(), expected);
                assert!(got.iter().all(Word::is_palindrome));
                assert!(got.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn minimal_elements_examples() {
        assert_eq!(minimal_elements(&words(&["0", "00", "000"])), words(&["0"]));
        assert_eq!(minimal_elements(&words(&["010", "101"])), words(&["010", "101"]));
        let sigma4: BTreeSet<Word> = enumerate_palindromes(4, 3, Parity::All)
            .into_iter()
            .filter(|p| p.len() > 1)
            .collect();
        let expected = words(&[
            "00", "11", "22", "33", "010", "020", "030", "101", "121", "131", "202", "212", "232", "303", "313", "323",
        ]);
        assert_eq!(minimal_elements(&sigma4), expected);
    }

    #[test]
    fn tree_push_pop_restores_state() {
        let mut t = PalTree::new(3);
        for &s in &[0, 1, 0, 2, 0, 1, 0] {
            t.push(s);
        }
        let before = t.palindromes();
        t.push(2);
        t.push(2);
        t.pop();
        t.pop();
        assert_eq!(t.palindromes(), before);
        assert_eq!(t.text(), &[0, 1, 0, 2, 0, 1, 0]);
    }

    fn word_strategy(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..k as u8, 0..=max_len).prop_map(move |s| Word::new(s, k).unwrap())
    }

    proptest! {
        #[test]
        fn reverse_is_involution(x in word_strategy(4, 40)) {
            prop_assert_eq!(reverse(&reverse(&x)), x);
        }

        #[test]
        fn tree_matches_naive(k in 1usize..5, s in prop::collection::vec(0u8..4, 0..=50)) {
            let s: Vec<u8> = s.into_iter().map(|c| c % k as u8).collect();
            let x = Word::new(s, k).unwrap();
            let fast = palindromic_factors(&x);
            prop_assert_eq!(&fast, &naive_palindromic_factors(&x));
            prop_assert!(fast.len() <= x.len() + 1);
            prop_assert_eq!(fast.even_count() + fast.odd_count(), fast.len());
        }

        #[test]
        fn palfac_invariant_under_reversal(x in word_strategy(3, 40)) {
            prop_assert_eq!(palindromic_factors(&x), palindromic_factors(&reverse(&x)));
        }

        #[test]
        fn palfac_closed_under_central_factor(x in word_strategy(3, 40)) {
            let set = palindromic_factors(&x);
            for p in set.palindromes() {
                if p.len() >= 2 {
                    let inner = Word::new(p.symbols()[1..p.len() - 1].to_vec(), 3).unwrap();
                    prop_assert!(set.contains(&inner));
                }
            }
        }

        #[test]
        fn minimal_elements_is_idempotent_antichain(
            set in prop::collection::btree_set(word_strategy(2, 6), 0..20)
        ) {
            let m = minimal_elements(&set);
            prop_assert_eq!(&minimal_elements(&m), &m);
            for x in &m {
                for y in &m {
                    prop_assert!(x == y || !y.is_factor_of(x));
                }
            }
        }
    }
}
