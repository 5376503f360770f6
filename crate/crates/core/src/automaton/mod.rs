//! Complete deterministic automata over `Σ_k`.

mod format;
mod minimize;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::Word;

pub use format::{export, import, import_grail, Format};

/// A complete DFA. States are `0..state_count`, the transition table is
/// stored row-major (`delta[q * k + a]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    delta: Vec<u32>,
    start: u32,
    accepting: Vec<bool>,
    dead: Option<u32>,
}

impl Dfa {
    /// Builds a DFA from a row-major transition table. The dead state is
    /// detected: the first nonaccepting state whose transitions all loop.
    pub fn from_table(alphabet_size: usize, delta: Vec<u32>, start: usize, accepting: Vec<bool>) -> Result<Dfa> {
        let n = accepting.len();
        if alphabet_size == 0 {
            return Err(Error::Input("alphabet must be nonempty".into()));
        }
        if n == 0 {
            return Err(Error::Input("automaton must have at least one state".into()));
        }
        if delta.len() != n * alphabet_size {
            return Err(Error::Input(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * alphabet_size
            )));
        }
        if start >= n {
            return Err(Error::Input(format!("start state {start} out of range")));
        }
        if let Some(&t) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(Error::Input(format!("transition target {t} out of range")));
        }
        let mut dfa = Dfa {
            alphabet_size,
            delta,
            start: start as u32,
            accepting,
            dead: None,
        };
        dfa.dead = (0..n as u32).find(|&q| dfa.is_sink_state(q));
        Ok(dfa)
    }

    pub fn from_rows(alphabet_size: usize, rows: &[Vec<usize>], start: usize, accepting: Vec<bool>) -> Result<Dfa> {
        if let Some(r) = rows.iter().position(|r| r.len() != alphabet_size) {
            return Err(Error::Input(format!(
                "row {r} has {} transitions, expected {alphabet_size}",
                rows[r].len()
            )));
        }
        let delta = rows.iter().flatten().map(|&t| t as u32).collect();
        Dfa::from_table(alphabet_size, delta, start, accepting)
    }

    fn is_sink_state(&self, q: u32) -> bool {
        !self.accepting[q as usize] && (0..self.alphabet_size).all(|a| self.next(q, a as u8) == q)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    /// State count with the dead state left out.
    pub fn live_state_count(&self) -> usize {
        self.state_count() - usize::from(self.dead.is_some())
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn dead(&self) -> Option<u32> {
        self.dead
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&f| f).count()
    }

    pub fn table(&self) -> &[u32] {
        &self.delta
    }

    #[inline]
    pub fn next(&self, q: u32, a: u8) -> u32 {
        self.delta[q as usize * self.alphabet_size + a as usize]
    }

    /// `δ*(q, w)`; symbols must be in range.
    pub fn run(&self, q: u32, symbols: &[u8]) -> u32 {
        symbols.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn accepts_symbols(&self, symbols: &[u8]) -> bool {
        self.is_accepting(self.run(self.start, symbols))
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        if let Some(&s) = w.symbols().iter().find(|&&s| s as usize >= self.alphabet_size) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as u32,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(self.accepts_symbols(w.symbols()))
    }

    /// States reachable from the start state, in breadth-first order with
    /// ascending symbols.
    pub fn bfs_order(&self) -> Vec<u32> {
        let mut seen = vec![false; self.state_count()];
        let mut order = Vec::with_capacity(self.state_count());
        let mut queue = VecDeque::new();
        seen[self.start as usize] = true;
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for a in 0..self.alphabet_size as u8 {
                let t = self.next(q, a);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Restricts to reachable states and renumbers them in BFS order.
    pub fn canonical(&self) -> Dfa {
        let order = self.bfs_order();
        let mut rename = vec![u32::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            rename[q as usize] = i as u32;
        }
        let k = self.alphabet_size;
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for a in 0..k as u8 {
                delta.push(rename[self.next(q, a) as usize]);
            }
        }
        let accepting = order.iter().map(|&q| self.accepting[q as usize]).collect();
        Dfa::from_table(k, delta, 0, accepting).expect("renumbering preserves validity")
    }

    /// The minimal complete DFA for the same language, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        minimize::hopcroft(&self.canonical())
    }

    /// Whether this automaton is already minimal.
    pub fn is_minimal(&self) -> bool {
        self.minimize().state_count() == self.state_count()
    }

    /// Length of the longest accepted word, `None` if the language is
    /// infinite or empty.
    pub fn longest_accepted(&self) -> Option<usize> {
        // longest path through reachable, co-reachable states; finite iff acyclic
        let useful = self.coaccessible();
        if !useful[self.start as usize] {
            return None;
        }
        let n = self.state_count();
        let nodes: Vec<u32> = self.bfs_order().into_iter().filter(|&q| useful[q as usize]).collect();
        let mut indegree = vec![0usize; n];
        for &q in &nodes {
            for a in 0..self.alphabet_size as u8 {
                let t = self.next(q, a);
                if useful[t as usize] {
                    indegree[t as usize] += 1;
                }
            }
        }
        let mut topo = Vec::with_capacity(nodes.len());
        let mut ready: Vec<u32> = nodes.iter().copied().filter(|&q| indegree[q as usize] == 0).collect();
        while let Some(q) = ready.pop() {
            topo.push(q);
            for a in 0..self.alphabet_size as u8 {
                let t = self.next(q, a);
                if useful[t as usize] {
                    indegree[t as usize] -= 1;
                    if indegree[t as usize] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        if topo.len() < nodes.len() {
            return None;
        }
        // every useful state reaches an accepting one, so the longest useful
        // path ends in an accepting state
        let mut longest = vec![0usize; n];
        for &q in topo.iter().rev() {
            longest[q as usize] = (0..self.alphabet_size as u8)
                .map(|a| self.next(q, a))
                .filter(|&t| useful[t as usize])
                .map(|t| longest[t as usize] + 1)
                .max()
                .unwrap_or(0);
        }
        Some(longest[self.start as usize])
    }

    /// States from which some accepting state can be reached.
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let k = self.alphabet_size;
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                preds[self.delta[q * k + a] as usize].push(q as u32);
            }
        }
        let mut good = self.accepting.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| good[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !good[p as usize] {
                    good[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        good
    }
}

/// Whether two minimal automata are identical up to renaming of states.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> Result<bool> {
    for (name, d) in [("first", a), ("second", b)] {
        if !d.is_minimal() {
            return Err(Error::Contract(format!(
                "{name} automaton is not minimal ({} states)",
                d.state_count()
            )));
        }
    }
    Ok(a.alphabet_size == b.alphabet_size && a.canonical() == b.canonical())
}
