//! Text formats for automata.
//!
//! Grail lines are `(START) |- s`, `p a q` and `f -| (FINAL)`. DOT output
//! leaves out the dead state. JSON carries everything.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Dfa;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Grail,
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "grail" => Ok(Format::Grail),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(Error::Input(format!("unknown automaton format '{other}'"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    states: usize,
    alphabet: usize,
    start: usize,
    accepting: Vec<usize>,
    dead: Option<usize>,
    delta: Vec<Vec<usize>>,
}

pub fn export(d: &Dfa, format: Format) -> String {
    match format {
        Format::Grail => to_grail(d),
        Format::Dot => to_dot(d),
        Format::Json => to_json(d),
    }
}

/// Parses Grail or JSON text. DOT is write-only.
pub fn import(text: &str, format: Format) -> Result<Dfa> {
    match format {
        Format::Grail => import_grail(text, None),
        Format::Json => from_json(text),
        Format::Dot => Err(Error::Unsupported("DOT import".into())),
    }
}

fn to_grail(d: &Dfa) -> String {
    let k = d.alphabet_size();
    let mut out = String::new();
    writeln!(out, "(START) |- {}", d.start()).unwrap();
    for q in 0..d.state_count() {
        for a in 0..k {
            writeln!(out, "{q} {a} {}", d.next(q as u32, a as u8)).unwrap();
        }
    }
    for q in 0..d.state_count() as u32 {
        if d.is_accepting(q) {
            writeln!(out, "{q} -| (FINAL)").unwrap();
        }
    }
    out
}

/// Parses Grail text. State labels may be any nonnegative integers; they are
/// renumbered in ascending order. Missing transitions go to an added dead
/// state. The alphabet defaults to `0..=max symbol seen`.
pub fn import_grail(text: &str, alphabet_size: Option<usize>) -> Result<Dfa> {
    let mut start: Option<u64> = None;
    let mut finals: Vec<u64> = Vec::new();
    let mut edges: Vec<(usize, u64, usize, u64)> = Vec::new();
    let mut labels: BTreeMap<u64, usize> = BTreeMap::new();

    let parse_state = |tok: &str, line: usize| -> Result<u64> {
        tok.parse::<u64>().map_err(|_| Error::Parse {
            line,
            message: format!("expected a state number, found '{tok}'"),
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] => continue,
            ["(START)", "|-", s] => {
                let s = parse_state(s, line)?;
                if start.replace(s).is_some_and(|old| old != s) {
                    return Err(Error::Parse {
                        line,
                        message: "more than one start state".into(),
                    });
                }
                labels.entry(s).or_insert(0);
            }
            [f, "-|", "(FINAL)"] => {
                let f = parse_state(f, line)?;
                finals.push(f);
                labels.entry(f).or_insert(0);
            }
            [p, a, q] => {
                let p = parse_state(p, line)?;
                let q = parse_state(q, line)?;
                let a: usize = a.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("expected a symbol digit, found '{a}'"),
                })?;
                labels.entry(p).or_insert(0);
                labels.entry(q).or_insert(0);
                edges.push((line, p, a, q));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unrecognized line '{}'", raw.trim()),
                })
            }
        }
    }
    let start = start.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "no (START) line".into(),
    })?;
    let max_symbol = edges.iter().map(|e| e.2 + 1).max().unwrap_or(1);
    let k = alphabet_size.unwrap_or(max_symbol);
    if let Some(e) = edges.iter().find(|e| e.2 >= k) {
        return Err(Error::Parse {
            line: e.0,
            message: format!("symbol {} outside alphabet of size {k}", e.2),
        });
    }
    for (i, v) in labels.values_mut().enumerate() {
        *v = i;
    }
    let n = labels.len();
    let missing = u32::MAX;
    let mut delta = vec![missing; n * k];
    for &(_, p, a, q) in &edges {
        let (p, q) = (labels[&p], labels[&q] as u32);
        let slot = &mut delta[p * k + a];
        if *slot != missing && *slot != q {
            return Err(Error::Nondeterministic { state: p, symbol: a });
        }
        *slot = q;
    }
    let mut accepting = vec![false; n];
    for f in finals {
        accepting[labels[&f]] = true;
    }
    if delta.contains(&missing) {
        let dead = n as u32;
        for slot in delta.iter_mut().filter(|s| **s == missing) {
            *slot = dead;
        }
        delta.extend(std::iter::repeat_n(dead, k));
        accepting.push(false);
    }
    Dfa::from_table(k, delta, labels[&start], accepting)
}

fn to_dot(d: &Dfa) -> String {
    let k = d.alphabet_size();
    let skip = d.dead();
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
    for q in 0..d.state_count() as u32 {
        if Some(q) == skip {
            continue;
        }
        let shape = if d.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  __start -> {};", d.start()).unwrap();
    for q in 0..d.state_count() as u32 {
        if Some(q) == skip {
            continue;
        }
        let mut by_target: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for a in 0..k {
            let t = d.next(q, a as u8);
            if Some(t) != skip {
                by_target.entry(t).or_default().push(a);
            }
        }
        for (t, syms) in by_target {
            let label: Vec<String> = syms.iter().map(|a| a.to_string()).collect();
            writeln!(out, "  {q} -> {t} [label=\"{}\"];", label.join(",")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn to_json(d: &Dfa) -> String {
    let k = d.alphabet_size();
    let doc = DfaJson {
        states: d.state_count(),
        alphabet: k,
        start: d.start() as usize,
        accepting: (0..d.state_count()).filter(|&q| d.is_accepting(q as u32)).collect(),
        dead: d.dead().map(|q| q as usize),
        delta: (0..d.state_count())
            .map(|q| (0..k).map(|a| d.next(q as u32, a as u8) as usize).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("automaton serializes")
}

fn from_json(text: &str) -> Result<Dfa> {
    let doc: DfaJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if doc.delta.len() != doc.states {
        return Err(Error::Input(format!(
            "delta has {} rows but states = {}",
            doc.delta.len(),
            doc.states
        )));
    }
    let mut accepting = vec![false; doc.states];
    for &f in &doc.accepting {
        *accepting
            .get_mut(f)
            .ok_or_else(|| Error::Input(format!("accepting state {f} out of range")))? = true;
    }
    let dfa = Dfa::from_rows(doc.alphabet, &doc.delta, doc.start, accepting)?;
    if let Some(dead) = doc.dead {
        if dead >= doc.states || !dfa.is_sink_state(dead as u32) {
            return Err(Error::Input(format!("state {dead} is not a dead state")));
        }
    }
    Ok(dfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::isomorphic;

    fn sample() -> Dfa {
        Dfa::from_rows(
            2,
            &[vec![1, 2], vec![3, 2], vec![1, 3], vec![3, 3]],
            0,
            vec![true, true, true, false],
        )
        .unwrap()
    }

    #[test]
    fn single_state_grail() {
        let d = Dfa::from_rows(1, &[vec![0]], 0, vec![true]).unwrap();
        assert_eq!(export(&d, Format::Grail), "(START) |- 0\n0 0 0\n0 -| (FINAL)\n");
    }

    #[test]
    fn round_trips() {
        let d = sample();
        for f in [Format::Grail, Format::Json] {
            let back = import(&export(&d, f), f).unwrap();
            assert_eq!(back, d);
            assert!(isomorphic(&back.minimize(), &d.minimize()).unwrap());
        }
    }

    #[test]
    fn grail_completion_adds_dead_state() {
        let text = "(START) |- 0\n0 0 1\n1 1 0\n0 -| (FINAL)\n1 -| (FINAL)\n";
        let d = import_grail(text, None).unwrap();
        assert_eq!(d.state_count(), 3);
        assert_eq!(d.dead(), Some(2));
        assert!(d.accepts_symbols(&[0, 1, 0]));
        assert!(!d.accepts_symbols(&[0, 0]));
    }

    #[test]
    fn grail_errors() {
        let err = import_grail("(START) |- 0\n0 0\n", None).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "unrecognized line '0 0'".into()
            }
        );
        let err = import_grail("(START) |- 0\n0 0 1\n0 0 2\n", None).unwrap_err();
        assert!(matches!(err, Error::Nondeterministic { state: 0, symbol: 0 }));
        assert!(import_grail("0 0 0\n", None).is_err());
        assert!(import_grail("(START) |- x\n", None).is_err());
    }

    #[test]
    fn dot_omits_dead_state() {
        let dot = export(&sample(), Format::Dot);
        assert!(!dot.contains("  3 ["));
        assert!(!dot.contains("-> 3"));
        assert!(dot.contains("0 -> 1 [label=\"0\"]"));
        let nodes = dot
            .lines()
            .filter(|l| l.contains("shape=") && !l.contains("__start"))
            .count();
        assert_eq!(nodes, 3);
    }

    #[test]
    fn json_rejects_bogus_dead() {
        let text = r#"{"states":2,"alphabet":1,"start":0,"accepting":[0],"dead":0,"delta":[[1],[1]]}"#;
        assert!(from_json(text).is_err());
    }
}
