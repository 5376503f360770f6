//! Infinite words surviving a constraint.
//!
//! An infinite word survives when every prefix is accepted, i.e. it labels
//! an infinite path through accepting states reachable from the start
//! through accepting states. Those paths end up inside one strongly
//! connected component. A component that is a single simple cycle pins
//! the tail down to one periodic word; any other nontrivial component has
//! a state with two distinct cycles and yields aperiodic words.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::automaton::Dfa;
use crate::construct::{ConstraintSpec, Tally};
use crate::error::{Error, Result};
use crate::words::{PalTree, Word};

/// Bound on the number of ultimately periodic words listed.
pub const ENUMERATION_CAP: usize = 1_000_000;

fn ser_word<S: Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// The infinite word `y x^ω`, kept normalized: `x` primitive and `y` as
/// short as possible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PeriodicWord {
    #[serde(serialize_with = "ser_word")]
    pub preperiod: Word,
    #[serde(serialize_with = "ser_word")]
    pub period: Word,
}

impl PeriodicWord {
    pub fn new(preperiod: Word, period: Word) -> Result<PeriodicWord> {
        if period.is_empty() {
            return Err(Error::Input(
                "the period of an ultimately periodic word is empty".into(),
            ));
        }
        let k = preperiod.alphabet_size().max(period.alphabet_size());
        let mut x = primitive_root(period.symbols()).to_vec();
        let mut y = preperiod.symbols().to_vec();
        while let Some(&last) = y.last() {
            if last != *x.last().unwrap() {
                break;
            }
            y.pop();
            x.rotate_right(1);
        }
        Ok(PeriodicWord {
            preperiod: Word::new(y, k)?,
            period: Word::new(x, k)?,
        })
    }

    /// Parses `y(x)^ω`, `y(x)^w` or `y(x)`.
    pub fn parse(text: &str, alphabet_size: usize) -> Result<PeriodicWord> {
        let text = text.trim();
        let bad = || Error::Input(format!("expected y(x)^ω, got \"{text}\""));
        let open = text.find('(').ok_or_else(bad)?;
        let close = text.rfind(')').ok_or_else(bad)?;
        if close < open {
            return Err(bad());
        }
        let rest = text[close + 1..].trim();
        if !matches!(rest, "" | "^ω" | "^w" | "^omega") {
            return Err(bad());
        }
        let y = Word::parse(&text[..open], alphabet_size)?;
        let x = Word::parse(&text[open + 1..close], alphabet_size)?;
        PeriodicWord::new(y, x)
    }

    /// The prefix `y x^j`.
    pub fn prefix(&self, j: usize) -> Vec<u8> {
        let mut out = self.preperiod.symbols().to_vec();
        for _ in 0..j {
            out.extend_from_slice(self.period.symbols());
        }
        out
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^ω", self.preperiod, self.period)
    }
}

/// Shortest `u` with `x = u^n`.
pub fn primitive_root(x: &[u8]) -> &[u8] {
    let n = x.len();
    for p in 1..n {
        if n.is_multiple_of(p) && x.chunks(p).all(|c| c == &x[..p]) {
            return &x[..p];
        }
    }
    x
}

/// `uv = vu`, i.e. both are powers of a common word.
pub fn commute(u: &[u8], v: &[u8]) -> bool {
    u.len() + v.len() == 0 || (u.iter().chain(v).eq(v.iter().chain(u)))
}

/// A state with two noncommuting cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Birecurrence {
    pub state: u32,
    #[serde(serialize_with = "ser_word")]
    pub x0: Word,
    #[serde(serialize_with = "ser_word")]
    pub x1: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "words")]
pub enum Classification {
    NoInfiniteWords,
    FinitelyManyPeriodic(Vec<PeriodicWord>),
    /// Countably many, all ultimately periodic: one cyclic component leads
    /// into another, so the number of loops before leaving is free.
    InfinitelyManyPeriodic,
    UncountablyManyAperiodic,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::NoInfiniteWords => "NoInfiniteWords",
            Classification::FinitelyManyPeriodic(_) => "FinitelyManyPeriodic",
            Classification::InfinitelyManyPeriodic => "InfinitelyManyPeriodic",
            Classification::UncountablyManyAperiodic => "UncountablyManyAperiodic",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub recurrent_states: BTreeSet<u32>,
    pub birecurrent: Option<Birecurrence>,
    pub classification: Classification,
}

/// Strongly connected components of the accepting states reachable from
/// the start through accepting states.
struct Components {
    /// Component id per state, `None` outside the live subgraph.
    id: Vec<Option<usize>>,
    members: Vec<Vec<u32>>,
}

fn live_edges(d: &Dfa, q: u32) -> impl Iterator<Item = (u8, u32)> + '_ {
    (0..d.alphabet_size() as u8)
        .map(move |a| (a, d.next(q, a)))
        .filter(move |&(_, r)| d.is_accepting(r))
}

fn live_reachable(d: &Dfa) -> Vec<bool> {
    let mut seen = vec![false; d.state_count()];
    if !d.is_accepting(d.start()) {
        return seen;
    }
    let mut queue = VecDeque::from([d.start()]);
    seen[d.start() as usize] = true;
    while let Some(q) = queue.pop_front() {
        for (_, r) in live_edges(d, q) {
            if !seen[r as usize] {
                seen[r as usize] = true;
                queue.push_back(r);
            }
        }
    }
    seen
}

/// Iterative Tarjan.
fn components(d: &Dfa) -> Components {
    let n = d.state_count();
    let live = live_reachable(d);
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut id = vec![None; n];
    let mut members = Vec::new();
    let mut counter = 0;
    let k = d.alphabet_size() as u8;
    for root in 0..n as u32 {
        if !live[root as usize] || index[root as usize] != usize::MAX {
            continue;
        }
        // frames: (state, next letter to try)
        let mut frames: Vec<(u32, u8)> = vec![(root, 0)];
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (q, ref mut a)) = frames.last_mut() {
            if *a < k {
                let r = d.next(q, *a);
                *a += 1;
                if !d.is_accepting(r) {
                    continue;
                }
                if index[r as usize] == usize::MAX {
                    index[r as usize] = counter;
                    low[r as usize] = counter;
                    counter += 1;
                    stack.push(r);
                    on_stack[r as usize] = true;
                    frames.push((r, 0));
                } else if on_stack[r as usize] {
                    low[q as usize] = low[q as usize].min(index[r as usize]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent as usize] = low[parent as usize].min(low[q as usize]);
            }
            if low[q as usize] == index[q as usize] {
                let c = members.len();
                let mut comp = Vec::new();
                loop {
                    let s = stack.pop().unwrap();
                    on_stack[s as usize] = false;
                    id[s as usize] = Some(c);
                    comp.push(s);
                    if s == q {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
        }
    }
    Components { id, members }
}

impl Components {
    fn internal_edges<'a>(&'a self, d: &'a Dfa, q: u32) -> impl Iterator<Item = (u8, u32)> + 'a {
        let c = self.id[q as usize];
        live_edges(d, q).filter(move |&(_, r)| self.id[r as usize] == c)
    }

    fn is_cyclic(&self, d: &Dfa, c: usize) -> bool {
        let q = self.members[c][0];
        self.members[c].len() > 1 || self.internal_edges(d, q).next().is_some()
    }

    fn is_simple_cycle(&self, d: &Dfa, c: usize) -> bool {
        self.members[c].iter().all(|&q| self.internal_edges(d, q).count() == 1)
    }
}

/// Reachable accepting states lying on a cycle of accepting states.
pub fn recurrent_states(d: &Dfa) -> BTreeSet<u32> {
    let comps = components(d);
    (0..comps.members.len())
        .filter(|&c| comps.is_cyclic(d, c))
        .flat_map(|c| comps.members[c].iter().copied())
        .collect()
}

/// BFS distances to `target` inside its component, with the letter and
/// successor of a shortest, lexicographically least path.
fn paths_to(d: &Dfa, comps: &Components, target: u32) -> BTreeMap<u32, (usize, u8, u32)> {
    let c = comps.id[target as usize];
    let mut best: BTreeMap<u32, (usize, u8, u32)> = BTreeMap::new();
    // backwards BFS over the component
    let members = &comps.members[c.expect("target is live")];
    let mut preds: BTreeMap<u32, Vec<(u32, u8)>> = BTreeMap::new();
    for &q in members {
        for (a, r) in comps.internal_edges(d, q) {
            preds.entry(r).or_default().push((q, a));
        }
    }
    let mut dist: BTreeMap<u32, usize> = BTreeMap::from([(target, 0)]);
    let mut queue = VecDeque::from([target]);
    while let Some(r) = queue.pop_front() {
        let dr = dist[&r];
        for &(q, _) in preds.get(&r).map(Vec::as_slice).unwrap_or(&[]) {
            dist.entry(q).or_insert_with(|| {
                queue.push_back(q);
                dr + 1
            });
        }
    }
    for &q in members {
        if q == target {
            continue;
        }
        let dq = dist[&q];
        let step = comps
            .internal_edges(d, q)
            .find(|(_, r)| dist.get(r) == Some(&(dq - 1)))
            .expect("a shortest path steps one closer");
        best.insert(q, (dq, step.0, step.1));
    }
    best
}

fn walk(paths: &BTreeMap<u32, (usize, u8, u32)>, mut q: u32, target: u32, out: &mut Vec<u8>) {
    while q != target {
        let (_, a, r) = paths[&q];
        out.push(a);
        q = r;
    }
}

/// A state with two noncommuting cycles, if any component allows one.
///
/// Every state with two distinct outgoing edges in its component is tried;
/// the two cycles leave by different letters and return along shortest
/// paths, so they cannot commute. The pair with the least total length
/// wins, ties going to the smaller state and letters.
pub fn birecurrent_witness(d: &Dfa) -> Option<Birecurrence> {
    let comps = components(d);
    let k = d.alphabet_size();
    let mut best: Option<(usize, u32, Vec<u8>, Vec<u8>)> = None;
    for c in 0..comps.members.len() {
        if !comps.is_cyclic(d, c) || comps.is_simple_cycle(d, c) {
            continue;
        }
        for &q in &comps.members[c] {
            let edges: Vec<(u8, u32)> = comps.internal_edges(d, q).collect();
            if edges.len() < 2 {
                continue;
            }
            let paths = paths_to(d, &comps, q);
            let cycle = |(a, r): (u8, u32)| {
                let mut w = vec![a];
                walk(&paths, r, q, &mut w);
                w
            };
            let cycles: Vec<Vec<u8>> = edges.into_iter().map(cycle).collect();
            for i in 0..cycles.len() {
                for j in i + 1..cycles.len() {
                    let total = cycles[i].len() + cycles[j].len();
                    if best.as_ref().is_none_or(|b| total < b.0) {
                        best = Some((total, q, cycles[i].clone(), cycles[j].clone()));
                    }
                }
            }
        }
    }
    let (_, state, x0, x1) = best?;
    assert!(
        d.run(state, &x0) == state && d.run(state, &x1) == state,
        "extracted cycles must close"
    );
    assert!(!commute(&x0, &x1), "extracted cycles must not commute");
    Some(Birecurrence {
        state,
        x0: Word::new(x0, k).expect("letters in range"),
        x1: Word::new(x1, k).expect("letters in range"),
    })
}

/// A reachable accepting state at which both words close a cycle.
pub fn common_cycle_state(d: &Dfa, x0: &Word, x1: &Word) -> Option<u32> {
    if x0.alphabet_size() > d.alphabet_size() || x1.alphabet_size() > d.alphabet_size() {
        return None;
    }
    let live = live_reachable(d);
    (0..d.state_count() as u32)
        .find(|&q| live[q as usize] && d.run(q, x0.symbols()) == q && d.run(q, x1.symbols()) == q)
}

/// Shortest (then least) word leading from the start to `q` through
/// accepting states.
pub fn path_from_start(d: &Dfa, q: u32) -> Option<Word> {
    let live = live_reachable(d);
    if !live.get(q as usize).copied().unwrap_or(false) {
        return None;
    }
    let mut parent: Vec<Option<(u32, u8)>> = vec![None; d.state_count()];
    let mut seen = vec![false; d.state_count()];
    seen[d.start() as usize] = true;
    let mut queue = VecDeque::from([d.start()]);
    while let Some(p) = queue.pop_front() {
        if p == q {
            break;
        }
        for (a, r) in live_edges(d, p) {
            if !seen[r as usize] {
                seen[r as usize] = true;
                parent[r as usize] = Some((p, a));
                queue.push_back(r);
            }
        }
    }
    let mut w = Vec::new();
    let mut s = q;
    while let Some((p, a)) = parent[s as usize] {
        w.push(a);
        s = p;
    }
    w.reverse();
    Word::new(w, d.alphabet_size()).ok()
}

/// All infinite words accepted in the limit when no state is birecurrent.
///
/// Fails with a contract error on a birecurrent automaton and with a
/// capacity error when there are infinitely many words (a cyclic component
/// reaches another) or more than [`ENUMERATION_CAP`].
pub fn enumerate_periodic(d: &Dfa) -> Result<Vec<PeriodicWord>> {
    let comps = components(d);
    let cyclic: Vec<bool> = (0..comps.members.len()).map(|c| comps.is_cyclic(d, c)).collect();
    if let Some(c) = (0..comps.members.len()).find(|&c| cyclic[c] && !comps.is_simple_cycle(d, c)) {
        return Err(Error::Contract(format!(
            "component of state {} is not a simple cycle, so some state is birecurrent",
            comps.members[c][0]
        )));
    }
    if !d.is_accepting(d.start()) {
        return Ok(Vec::new());
    }
    if let Some(c) = (0..comps.members.len()).find(|&c| cyclic[c] && leads_to_other_cycle(d, &comps, &cyclic, c)) {
        return Err(Error::Capacity(format!(
            "infinitely many ultimately periodic words: the cycle through state {} leads to another cycle",
            comps.members[c][0]
        )));
    }
    let k = d.alphabet_size();
    let mut found: BTreeSet<PeriodicWord> = BTreeSet::new();
    // depth-first over the acyclic part, entering each cycle once
    let mut stack: Vec<(u32, Vec<u8>)> = vec![(d.start(), Vec::new())];
    while let Some((q, y)) = stack.pop() {
        let c = comps.id[q as usize].expect("live state");
        if cyclic[c] {
            let mut x = Vec::new();
            let mut s = q;
            loop {
                let (a, r) = comps.internal_edges(d, s).next().expect("cycle edge");
                x.push(a);
                s = r;
                if s == q {
                    break;
                }
            }
            found.insert(PeriodicWord::new(Word::new(y, k)?, Word::new(x, k)?)?);
            if found.len() > ENUMERATION_CAP {
                return Err(Error::Capacity(format!("more than {ENUMERATION_CAP} periodic words")));
            }
            continue;
        }
        for (a, r) in live_edges(d, q).collect::<Vec<_>>().into_iter().rev() {
            let mut next = y.clone();
            next.push(a);
            stack.push((r, next));
        }
    }
    let mut out: Vec<PeriodicWord> = found.into_iter().collect();
    out.sort_by(|a, b| {
        (a.preperiod.len(), &a.preperiod, a.period.len(), &a.period).cmp(&(
            b.preperiod.len(),
            &b.preperiod,
            b.period.len(),
            &b.period,
        ))
    });
    Ok(out)
}

fn leads_to_other_cycle(d: &Dfa, comps: &Components, cyclic: &[bool], c: usize) -> bool {
    let mut seen = vec![false; d.state_count()];
    let mut queue: VecDeque<u32> = comps.members[c].iter().copied().collect();
    for &q in &comps.members[c] {
        seen[q as usize] = true;
    }
    while let Some(q) = queue.pop_front() {
        for (_, r) in live_edges(d, q) {
            if seen[r as usize] {
                continue;
            }
            seen[r as usize] = true;
            if cyclic[comps.id[r as usize].expect("live state")] {
                return true;
            }
            queue.push_back(r);
        }
    }
    false
}

pub fn classify(d: &Dfa) -> Classification {
    analyze(d).classification
}

pub fn analyze(d: &Dfa) -> AnalysisReport {
    let recurrent = recurrent_states(d);
    if recurrent.is_empty() {
        return AnalysisReport {
            recurrent_states: recurrent,
            birecurrent: None,
            classification: Classification::NoInfiniteWords,
        };
    }
    if let Some(b) = birecurrent_witness(d) {
        return AnalysisReport {
            recurrent_states: recurrent,
            birecurrent: Some(b),
            classification: Classification::UncountablyManyAperiodic,
        };
    }
    let classification = match enumerate_periodic(d) {
        Ok(words) => Classification::FinitelyManyPeriodic(words),
        Err(_) => Classification::InfinitelyManyPeriodic,
    };
    AnalysisReport {
        recurrent_states: recurrent,
        birecurrent: None,
        classification,
    }
}

/// A nonerasing morphism given by the images of its source letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: BTreeMap<u8, Word>,
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.images.len()))?;
        for (a, w) in &self.images {
            m.serialize_entry(&a.to_string(), &w.to_string())?;
        }
        m.end()
    }
}

impl Morphism {
    pub fn new(images: BTreeMap<u8, Word>) -> Result<Morphism> {
        if let Some((a, _)) = images.iter().find(|(_, w)| w.is_empty()) {
            return Err(Error::Input(format!("the image of {a} is empty")));
        }
        Ok(Morphism { images })
    }

    /// `0 -> images[0]`, `1 -> images[1]`, ...
    pub fn from_images(images: &[Word]) -> Result<Morphism> {
        Morphism::new(images.iter().enumerate().map(|(a, w)| (a as u8, w.clone())).collect())
    }

    pub fn images(&self) -> &BTreeMap<u8, Word> {
        &self.images
    }

    pub fn image(&self, a: u8) -> Option<&Word> {
        self.images.get(&a)
    }

    pub fn target_alphabet(&self) -> usize {
        self.images.values().map(Word::alphabet_size).max().unwrap_or(1)
    }

    pub fn apply_symbols(&self, w: &[u8]) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for &a in w {
            let img = self
                .images
                .get(&a)
                .ok_or_else(|| Error::Input(format!("letter {a} has no image")))?;
            out.extend_from_slice(img.symbols());
        }
        Ok(out)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        Word::new(self.apply_symbols(w.symbols())?, self.target_alphabet())
    }

    /// First `n` letters of the fixed point starting with `a`, which needs
    /// `a`'s image to start with `a`, be longer than one letter and every
    /// letter met to have an image.
    pub fn fixed_point_prefix(&self, a: u8, n: usize) -> Result<Word> {
        let img = self
            .image(a)
            .ok_or_else(|| Error::Input(format!("letter {a} has no image")))?;
        if img.symbols()[0] != a || img.len() < 2 {
            return Err(Error::Input(format!("the image {img} of {a} does not grow from {a}")));
        }
        let mut w = vec![a];
        while w.len() < n {
            w = self.apply_symbols(&w)?;
        }
        w.truncate(n);
        Word::new(w, self.target_alphabet())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessMorphisms {
    /// `0 -> x0`, `1 -> x1`.
    pub h: Morphism,
    /// `a -> x_a x_b`, `b -> x_b x_a` for the letter `a` whose cycle starts
    /// with `a`.
    pub g: Option<Morphism>,
    pub g_letter: Option<u8>,
    /// Why `g` is missing, when it is.
    pub g_unavailable: Option<String>,
}

/// The morphisms turning binary words into words labelling paths that
/// loop at the birecurrent state.
///
/// `g` is only formed when it is an endomorphism of `{0,1}*` (both cycles
/// binary) and some `x_a` starts with `a`, since its fixed point is
/// otherwise undefined.
pub fn witness_morphisms(b: &Birecurrence) -> Result<WitnessMorphisms> {
    let xs = [b.x0.clone(), b.x1.clone()];
    let h = Morphism::from_images(&xs)?;
    let binary = xs.iter().all(|x| x.symbols().iter().all(|&s| s < 2));
    let letter = (0..2u8).find(|&a| xs[a as usize].symbols()[0] == a);
    let (g, g_letter, g_unavailable) = match (binary, letter) {
        (false, _) => (
            None,
            None,
            Some("the cycles use letters outside {0,1}, so g has no fixed point".to_string()),
        ),
        (true, None) => (
            None,
            None,
            Some("neither x0 starts with 0 nor x1 starts with 1".to_string()),
        ),
        (true, Some(a)) => {
            let (xa, xb) = (&xs[a as usize], &xs[1 - a as usize]);
            let mut images = BTreeMap::new();
            images.insert(a, xa.concat(xb));
            images.insert(1 - a, xb.concat(xa));
            (Some(Morphism::new(images)?), Some(a), None)
        }
    };
    Ok(WitnessMorphisms {
        h,
        g,
        g_letter,
        g_unavailable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicCheck {
    /// Every tested prefix satisfies the constraint.
    pub accepted: bool,
    /// `|PalFac|` of the last prefix tested, `ε` included.
    pub palfac_size: usize,
    /// Largest `j` such that `y x^j` was tested.
    pub exponent: usize,
    /// The palindromic factors stopped changing.
    pub stabilized: bool,
}

const MAX_EXPONENT: usize = 10_000;

/// Runs `y x^j` for growing `j` until the set of palindromic factors is the
/// same for two consecutive `j` past the point where `y x^j` is at least
/// twice as long as `y x`.
pub fn verify_ultimately_periodic(word: &PeriodicWord, spec: &ConstraintSpec) -> PeriodicCheck {
    let mut tree = PalTree::new(spec.alphabet_size);
    let mut tally = Tally::default();
    let push = |tree: &mut PalTree, tally: &mut Tally, s: u8| -> bool {
        if s as usize >= spec.alphabet_size {
            return false;
        }
        if let Some(len) = tree.push(s) {
            tally.record(len);
            let text = tree.text();
            return spec.admits_new(*tally, &text[text.len() - len..]);
        }
        true
    };
    let mut check = PeriodicCheck {
        accepted: spec.admits_empty(),
        palfac_size: 1,
        exponent: 0,
        stabilized: false,
    };
    if !check.accepted {
        return check;
    }
    for &s in word.preperiod.symbols() {
        if !push(&mut tree, &mut tally, s) {
            check.accepted = false;
            check.palfac_size = tree.distinct_count();
            return check;
        }
    }
    let (ylen, xlen) = (word.preperiod.len(), word.period.len());
    let min_j = (ylen + xlen).div_ceil(xlen) * 2;
    let mut previous = tree.distinct_count();
    for j in 1..=MAX_EXPONENT {
        for &s in word.period.symbols() {
            if !push(&mut tree, &mut tally, s) {
                check.accepted = false;
                check.palfac_size = tree.distinct_count();
                check.exponent = j;
                return check;
            }
        }
        let now = tree.distinct_count();
        check.palfac_size = now;
        check.exponent = j;
        // sets only grow, so equal sizes mean equal sets
        if now == previous && j >= min_j {
            check.stabilized = true;
            return check;
        }
        previous = now;
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_direct, ConstraintSpec};

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn pw(y: &str, x: &str) -> PeriodicWord {
        PeriodicWord::new(Word::parse(y, 2).unwrap(), Word::parse(x, 2).unwrap()).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(pw("", "0101"), pw("", "01"));
        assert_eq!(pw("1", "001011"), pw("", "100101"));
        assert_eq!(pw("01", "00010111"), pw("0", "10001011"));
        assert_eq!(pw("0", "011001").to_string(), "0(011001)^ω");
        assert_eq!(PeriodicWord::parse("10(011001)^ω", 2).unwrap(), pw("10", "011001"));
        assert!(PeriodicWord::parse("10011001", 2).is_err());
        assert!(PeriodicWord::new(Word::empty(2), Word::empty(2)).is_err());
    }

    #[test]
    fn commuting() {
        assert!(commute(b"0101", b"01"));
        assert!(!commute(b"0012", b"012"));
        assert_eq!(primitive_root(b"001001"), b"001");
    }

    #[test]
    fn small_classifications() {
        let d8 = build_direct(&ConstraintSpec::max_distinct(2, 8)).unwrap().minimized;
        assert!(recurrent_states(&d8).is_empty());
        assert_eq!(classify(&d8), Classification::NoInfiniteWords);

        let d9 = build_direct(&ConstraintSpec::max_distinct(2, 9)).unwrap().minimized;
        assert_eq!(recurrent_states(&d9).len(), 12);
        assert!(birecurrent_witness(&d9).is_none());
        let words = enumerate_periodic(&d9).unwrap();
        assert_eq!(words.len(), 12);
        assert!(words.iter().all(|p| p.preperiod.is_empty() && p.period.len() == 6));

        let d5 = build_direct(&ConstraintSpec::max_distinct(3, 5)).unwrap().minimized;
        let b = birecurrent_witness(&d5).unwrap();
        assert_eq!(d5.run(b.state, b.x0.symbols()), b.state);
        assert!(enumerate_periodic(&d5).is_err());
        assert!(common_cycle_state(&d5, &w("0012"), &w("012")).is_some());
    }

    #[test]
    fn morphisms() {
        let h = Morphism::from_images(&[w("2301"), w("301")]).unwrap();
        assert_eq!(h.apply(&w("01")).unwrap(), w("2301301"));
        assert_eq!(h.apply(&Word::empty(2)).unwrap().len(), 0);
        assert!(h.apply(&w("012")).is_err());
        assert!(Morphism::from_images(&[w("0"), Word::empty(2)]).is_err());
        let tm = Morphism::from_images(&[w("01"), w("10")]).unwrap();
        assert_eq!(tm.fixed_point_prefix(0, 8).unwrap(), w("01101001"));
    }

    #[test]
    fn g_availability() {
        let b = Birecurrence {
            state: 0,
            x0: w("0012"),
            x1: w("012"),
        };
        let m = witness_morphisms(&b).unwrap();
        assert!(m.g.is_none() && m.g_unavailable.is_some());
        let b = Birecurrence {
            state: 0,
            x0: Word::parse("001011", 2).unwrap(),
            x1: Word::parse("0001011", 2).unwrap(),
        };
        let m = witness_morphisms(&b).unwrap();
        assert_eq!(m.g_letter, Some(0));
        assert_eq!(m.g.unwrap().image(0).unwrap().to_string(), "0010110001011");
        let b = Birecurrence {
            state: 0,
            x0: Word::parse("10", 2).unwrap(),
            x1: Word::parse("0", 2).unwrap(),
        };
        assert!(witness_morphisms(&b).unwrap().g.is_none());
    }

    #[test]
    fn periodic_checks() {
        let d9 = ConstraintSpec::max_distinct(2, 9);
        let c = verify_ultimately_periodic(&pw("", "001011"), &d9);
        assert!(c.accepted && c.stabilized);
        assert_eq!(c.palfac_size, 9);
        let d10 = ConstraintSpec::max_distinct(2, 10);
        let c = verify_ultimately_periodic(&pw("0", "001011"), &d10);
        assert!(c.accepted);
        assert_eq!(c.palfac_size, 10);
        let d1 = ConstraintSpec::max_distinct(2, 1);
        assert!(!verify_ultimately_periodic(&pw("", "0"), &d1).accepted);
    }
}
