//! Hopcroft partition refinement.

use super::Dfa;

/// Refinable partition of `0..n` kept as a permutation array in which every
/// block occupies a contiguous range.
struct Partition {
    elems: Vec<u32>,
    loc: Vec<u32>,
    block_of: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    /// Marked elements sit at `start..start + marked`.
    marked: Vec<u32>,
}

impl Partition {
    fn new(n: usize) -> Partition {
        Partition {
            elems: (0..n as u32).collect(),
            loc: (0..n as u32).collect(),
            block_of: vec![0; n],
            start: vec![0],
            end: vec![n as u32],
            marked: vec![0],
        }
    }

    fn block_count(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: u32) -> u32 {
        self.end[b as usize] - self.start[b as usize]
    }

    fn members(&self, b: u32) -> &[u32] {
        &self.elems[self.start[b as usize] as usize..self.end[b as usize] as usize]
    }

    fn mark(&mut self, x: u32) {
        let b = self.block_of[x as usize] as usize;
        let pos = self.loc[x as usize];
        let target = self.start[b] + self.marked[b];
        if pos < target {
            return; // already marked
        }
        let other = self.elems[target as usize];
        self.elems.swap(pos as usize, target as usize);
        self.loc[x as usize] = target;
        self.loc[other as usize] = pos;
        self.marked[b] += 1;
    }

    /// Splits block `b` into its marked and unmarked parts. Returns the id of
    /// the new block (which holds the smaller part) if a split happened.
    fn split(&mut self, b: u32) -> Option<u32> {
        let bi = b as usize;
        let m = self.marked[bi];
        self.marked[bi] = 0;
        let size = self.end[bi] - self.start[bi];
        if m == 0 || m == size {
            return None;
        }
        let new = self.start.len() as u32;
        let cut = self.start[bi] + m;
        if m <= size - m {
            // marked part becomes the new block
            self.start.push(self.start[bi]);
            self.end.push(cut);
            self.start[bi] = cut;
        } else {
            self.start.push(cut);
            self.end.push(self.end[bi]);
            self.end[bi] = cut;
        }
        self.marked.push(0);
        let ni = new as usize;
        for i in self.start[ni]..self.end[ni] {
            let x = self.elems[i as usize];
            self.block_of[x as usize] = new;
        }
        Some(new)
    }
}

/// Minimizes a DFA whose states are all reachable, returning the quotient in
/// canonical numbering.
pub(super) fn hopcroft(d: &Dfa) -> Dfa {
    let n = d.state_count();
    let k = d.alphabet_size();

    // inverse transitions in CSR form, per symbol
    let mut inv_start = vec![0u32; k * n + 1];
    for q in 0..n {
        for a in 0..k {
            let t = d.table()[q * k + a] as usize;
            inv_start[a * n + t + 1] += 1;
        }
    }
    for i in 0..k * n {
        inv_start[i + 1] += inv_start[i];
    }
    let mut fill = inv_start.clone();
    let mut inv = vec![0u32; k * n];
    for q in 0..n {
        for a in 0..k {
            let t = d.table()[q * k + a] as usize;
            let slot = &mut fill[a * n + t];
            inv[*slot as usize] = q as u32;
            *slot += 1;
        }
    }

    let mut part = Partition::new(n);
    let mut in_work: Vec<bool> = Vec::new();
    let mut work: Vec<u32> = Vec::new();
    for q in 0..n as u32 {
        if d.is_accepting(q) {
            part.mark(q);
        }
    }
    match part.split(0) {
        Some(b) => {
            in_work = vec![false, true];
            work.push(b);
        }
        None => in_work.push(true),
    }
    if work.is_empty() {
        work.push(0);
    }

    let mut touched: Vec<u32> = Vec::new();
    let mut splitter: Vec<u32> = Vec::new();
    while let Some(s) = work.pop() {
        in_work[s as usize] = false;
        splitter.clear();
        splitter.extend_from_slice(part.members(s));
        for a in 0..k {
            for &t in &splitter {
                let base = a * n + t as usize;
                for &p in &inv[inv_start[base] as usize..inv_start[base + 1] as usize] {
                    let b = part.block_of[p as usize];
                    if part.marked[b as usize] == 0 {
                        touched.push(b);
                    }
                    part.mark(p);
                }
            }
            for b in touched.drain(..) {
                if let Some(new) = part.split(b) {
                    in_work.push(false);
                    if in_work[b as usize] || part.size(new) <= part.size(b) {
                        in_work[new as usize] = true;
                        work.push(new);
                    } else {
                        in_work[b as usize] = true;
                        work.push(b);
                    }
                }
            }
        }
    }

    let blocks = part.block_count();
    let mut delta = vec![0u32; blocks * k];
    let mut accepting = vec![false; blocks];
    for b in 0..blocks as u32 {
        let rep = part.members(b)[0];
        accepting[b as usize] = d.is_accepting(rep);
        for a in 0..k {
            delta[b as usize * k + a] = part.block_of[d.next(rep, a as u8) as usize];
        }
    }
    let start = part.block_of[d.start() as usize] as usize;
    Dfa::from_table(k, delta, start, accepting)
        .expect("quotient automaton is well formed")
        .canonical()
}
