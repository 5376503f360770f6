//! The catalogue of quantitative checks.
//!
//! Every check compares an expected value with the one computed here and is
//! tagged with the acceptance criterion it belongs to (1 to 10) and the
//! family group it exercises. Diagnostic checks are reported alongside but
//! never decide a criterion.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyze::{
    analyze, birecurrent_witness, common_cycle_state, enumerate_periodic, path_from_start, verify_ultimately_periodic,
    witness_morphisms, Classification, Morphism, PeriodicWord,
};
use crate::automaton::{export, import, isomorphic, Dfa, Format};
use crate::construct::{build_avoidance, build_direct, forbidden_set, Built, ConstraintSpec, EmptyWord};
use crate::error::{Error, Result};
use crate::oracle::{brute_counts_with, longest_word, Longest, OracleOptions};
use crate::par::Execution;
use crate::recur::{
    asymptotic_fit, dominant_root, factor_int_poly, lda, matrix_min_poly_with, minimal_recurrence, sequence,
    transfer_matrix, window_apply, GrowthMode, IntPoly, MinPolyOptions,
};
use crate::verify::{check_stabilization, perturbed_symmetry, thue_morse, transform};
use crate::words::{naive_palindromic_factors, palindromic_factors, PalFacSet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Group {
    /// The direct construction against the forbidden-factor one.
    Construction,
    /// `D_ℓ`: at most `ℓ` distinct palindromes.
    Distinct,
    /// `E_ℓ` and the four-letter allowed set: short palindromes only.
    Length,
    /// `R_{ℓ,m}`: caps on even and odd palindrome lengths.
    ParityLength,
    /// `T_{ℓ,m}`: caps on the numbers of even and odd palindromes.
    ParityCount,
    /// Perturbed-symmetry words and state transformations.
    Stabilization,
    /// Brute force against transfer matrices.
    Oracle,
    /// Randomized property checks.
    Properties,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Construction,
        Group::Distinct,
        Group::Length,
        Group::ParityLength,
        Group::ParityCount,
        Group::Stabilization,
        Group::Oracle,
        Group::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Construction => "construction",
            Group::Distinct => "distinct",
            Group::Length => "length",
            Group::ParityLength => "parity-length",
            Group::ParityCount => "parity-count",
            Group::Stabilization => "stabilization",
            Group::Oracle => "oracle",
            Group::Properties => "properties",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Group> {
        let s = s.to_ascii_lowercase();
        let alias = match s.as_str() {
            "d" => "distinct",
            "e" => "length",
            "r" => "parity-length",
            "t" => "parity-count",
            other => other,
        };
        Group::ALL
            .into_iter()
            .find(|g| g.name() == alias)
            .ok_or_else(|| Error::Input(format!("unknown group '{s}'")))
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "minimized state counts"),
    (2, "classification of infinite words"),
    (3, "exact sequence values"),
    (4, "minimal annihilators, both paths"),
    (5, "matrix minimal polynomials"),
    (6, "dominant roots and asymptotic constants"),
    (7, "oracle equals transfer matrix"),
    (8, "direct and forbidden-factor constructions agree"),
    (9, "state-transformation stabilization"),
    (10, "property suites"),
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub group: Group,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub diagnostic: bool,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    /// Groups to run; empty runs all.
    pub groups: Vec<Group>,
    /// Criteria to run; empty runs all.
    pub criteria: Vec<u8>,
    pub seed: u64,
    pub execution: Execution,
    /// Convention for the `T` rows; only `NotCounted` reproduces every
    /// published state count.
    pub empty_word: EmptyWord,
    pub oracle_budget: u64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions {
            groups: Vec::new(),
            criteria: Vec::new(),
            seed: 1,
            execution: Execution::default(),
            empty_word: EmptyWord::NotCounted,
            oracle_budget: crate::oracle::DEFAULT_WORD_BUDGET,
        }
    }
}

/// Failing checks that stem from published claims this crate finds to be
/// contradicted by direct computation, keyed by check id.
pub const KNOWN_DISCREPANCIES: [(&str, &str); 7] = [
    (
        "classify/T'_{3,9}(Σ_2)",
        "aperiodic words exist; cycles 01110100 and 1110100",
    ),
    (
        "classify/T'_{3,8}(Σ_2)",
        "aperiodic words exist; cycles 0001011 and 10001011",
    ),
    (
        "classify/T'_{4,7}(Σ_2)",
        "aperiodic words exist; cycles 0110100 and 110100",
    ),
    (
        "classify/T'_{4,6}(Σ_2)",
        "aperiodic words exist; cycles 0101100 and 101100",
    ),
    (
        "classify/T'_{6,5}(Σ_2)",
        "aperiodic words exist; cycles 00101100 and 101100",
    ),
    (
        "classify/T'_{8,4}(Σ_2)",
        "aperiodic words exist; cycles 011001 and 1001011001",
    ),
    (
        "sequence/r_{3,0,3}",
        "the counts are 6 Narayana(n+1), which is what the published constant implies",
    ),
];

pub fn is_known_discrepancy(id: &str) -> bool {
    KNOWN_DISCREPANCIES.iter().any(|(k, _)| *k == id)
}

struct Runner<'a> {
    options: &'a ReproduceOptions,
    built: RefCell<HashMap<ConstraintSpec, (Rc<Built>, f64)>>,
    checks: Vec<Check>,
}

fn w(text: &str, k: usize) -> Word {
    Word::parse(text, k).expect("catalogue words are valid")
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

fn ratio_ok(actual: f64, expected: f64, tol: f64) -> bool {
    ((actual - expected) / expected).abs() <= tol
}

impl<'a> Runner<'a> {
    fn wants(&self, criterion: u8, group: Group) -> bool {
        (self.options.criteria.is_empty() || self.options.criteria.contains(&criterion))
            && (self.options.groups.is_empty() || self.options.groups.contains(&group))
    }

    fn build(&self, spec: &ConstraintSpec) -> Result<(Rc<Built>, f64)> {
        if let Some(hit) = self.built.borrow().get(spec) {
            return Ok(hit.clone());
        }
        let t = Instant::now();
        let b = Rc::new(build_direct(spec)?);
        let entry = (b, t.elapsed().as_secs_f64());
        self.built.borrow_mut().insert(spec.clone(), entry.clone());
        Ok(entry)
    }

    fn dfa(&self, spec: &ConstraintSpec) -> Result<Rc<Built>> {
        Ok(self.build(spec)?.0)
    }

    /// Runs one check body; errors become failing checks.
    fn check<F>(&mut self, criterion: u8, group: Group, id: &str, expected: &str, diagnostic: bool, body: F)
    where
        F: FnOnce(&Self) -> Result<(String, bool)>,
    {
        if !self.wants(criterion, group) {
            return;
        }
        let t = Instant::now();
        let (actual, pass) = match body(self) {
            Ok(r) => r,
            Err(e) => (format!("error: {e}"), false),
        };
        self.checks.push(Check {
            id: id.to_string(),
            criterion,
            group,
            expected: expected.to_string(),
            actual,
            pass,
            diagnostic,
            seconds: t.elapsed().as_secs_f64(),
        });
    }

    fn t(&self, k: usize, even: usize, odd: usize) -> ConstraintSpec {
        ConstraintSpec::count_by_parity(k, even, odd, self.options.empty_word)
    }
}

fn sigma4() -> ConstraintSpec {
    let set = ["", "0", "1", "2", "3"].iter().map(|s| w(s, 4)).collect();
    ConstraintSpec::allowed(4, set).expect("valid allowed set")
}

const T_PERIODIC: [(usize, usize, usize, &str); 10] = [
    (3, 9, 1468, "01(00010111)^ω"),
    (3, 8, 799, "1(00010111)^ω"),
    (4, 7, 1181, "01(0001011)^ω"),
    (4, 6, 530, "1(0001011)^ω"),
    (5, 5, 419, "0(001011)^ω"),
    (5, 4, 136, "(001011)^ω"),
    (6, 5, 604, "(00001011)^ω"),
    (6, 4, 177, "0(011001)^ω"),
    (7, 4, 261, "10(011001)^ω"),
    (8, 4, 375, "1101(001011)^ω"),
];

const T_APERIODIC: [(usize, usize, usize, &str, &str); 5] = [
    (3, 10, 3071, "00011101", "0100011101"),
    (4, 8, 2830, "0010111", "00010111"),
    (5, 6, 1269, "001011", "0001011"),
    (7, 5, 955, "001011", "00001011"),
    (9, 4, 545, "001011", "0011001011"),
];

/// Every instance with its group, for the oracle sweep.
fn instances(r: &Runner) -> Vec<(ConstraintSpec, Group)> {
    let mut v = vec![];
    for l in [8, 9, 10, 11, 13] {
        v.push((ConstraintSpec::max_distinct(2, l), Group::Distinct));
    }
    for l in [3, 4, 5] {
        v.push((ConstraintSpec::max_distinct(3, l), Group::Distinct));
    }
    v.push((ConstraintSpec::max_len(2, 4), Group::Length));
    v.push((ConstraintSpec::max_len(2, 5), Group::Length));
    v.push((ConstraintSpec::max_len(3, 1), Group::Length));
    v.push((ConstraintSpec::max_len(3, 2), Group::Length));
    v.push((sigma4(), Group::Length));
    v.push((ConstraintSpec::max_len_by_parity(2, 2, 5), Group::ParityLength));
    v.push((ConstraintSpec::max_len_by_parity(2, 6, 3), Group::ParityLength));
    v.push((ConstraintSpec::max_len_by_parity(3, 0, 3), Group::ParityLength));
    for (e, o, _, _) in T_PERIODIC {
        v.push((r.t(2, e, o), Group::ParityCount));
    }
    for (e, o, _, _, _) in T_APERIODIC {
        v.push((r.t(2, e, o), Group::ParityCount));
    }
    v.push((r.t(3, 1, 5), Group::ParityCount));
    v
}

/// Runs the selected checks in catalogue order.
pub fn run(options: &ReproduceOptions) -> Vec<Check> {
    let mut r = Runner {
        options,
        built: RefCell::new(HashMap::new()),
        checks: Vec::new(),
    };
    state_counts(&mut r);
    classifications(&mut r);
    sequences(&mut r);
    annihilators(&mut r);
    min_polys(&mut r);
    asymptotics(&mut r);
    oracle_sweep(&mut r);
    constructions(&mut r);
    stabilization(&mut r);
    properties(&mut r);
    r.checks
}

fn state_counts(r: &mut Runner) {
    let mut rows: Vec<(ConstraintSpec, Group, Vec<usize>, f64)> = vec![];
    for (l, n) in [(8, 23), (9, 98), (10, 280), (11, 810)] {
        rows.push((ConstraintSpec::max_distinct(2, l), Group::Distinct, vec![n], 60.0));
    }
    rows.push((
        ConstraintSpec::max_distinct(2, 13),
        Group::Distinct,
        vec![6521, 6522],
        600.0,
    ));
    for (l, n) in [(3, 3), (4, 18), (5, 69)] {
        rows.push((ConstraintSpec::max_distinct(3, l), Group::Distinct, vec![n], 60.0));
    }
    rows.push((ConstraintSpec::max_len(2, 5), Group::Length, vec![62], 60.0));
    rows.push((ConstraintSpec::max_len(3, 1), Group::Length, vec![10], 60.0));
    rows.push((ConstraintSpec::max_len(3, 2), Group::Length, vec![19], 60.0));
    rows.push((
        ConstraintSpec::max_len_by_parity(2, 2, 5),
        Group::ParityLength,
        vec![44],
        60.0,
    ));
    rows.push((
        ConstraintSpec::max_len_by_parity(2, 6, 3),
        Group::ParityLength,
        vec![60],
        60.0,
    ));
    rows.push((
        ConstraintSpec::max_len_by_parity(3, 0, 3),
        Group::ParityLength,
        vec![34],
        60.0,
    ));
    for (e, o, n, _) in T_PERIODIC {
        rows.push((r.t(2, e, o), Group::ParityCount, vec![n], 60.0));
    }
    for (e, o, n, _, _) in T_APERIODIC {
        rows.push((r.t(2, e, o), Group::ParityCount, vec![n], 60.0));
    }
    rows.push((r.t(3, 1, 5), Group::ParityCount, vec![632], 60.0));
    for (spec, group, expected, limit) in rows {
        let exp: Vec<String> = expected.iter().map(|n| n.to_string()).collect();
        let exp = format!("{} (within {limit} s)", exp.join(" or "));
        r.check(1, group, &format!("states/{spec}"), &exp, false, |r| {
            let (b, secs) = r.build(&spec)?;
            let n = b.minimal_states();
            Ok((
                format!("{n} ({secs:.2} s, {} explored)", b.explored_states()),
                expected.contains(&n) && secs <= limit,
            ))
        });
    }
}

fn fmt_words(v: &BTreeSet<PeriodicWord>) -> String {
    let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    s.join(" ")
}

fn conjugates(x: &str, k: usize) -> Vec<PeriodicWord> {
    let x = w(x, k);
    (0..x.len())
        .map(|i| {
            let mut s = x.symbols().to_vec();
            s.rotate_left(i);
            PeriodicWord::new(Word::empty(k), Word::new(s, k).unwrap()).unwrap()
        })
        .collect()
}

fn with_preperiods(ys: &[&str], x: &str) -> Vec<PeriodicWord> {
    ys.iter()
        .map(|y| PeriodicWord::new(w(y, 2), w(x, 2)).unwrap())
        .collect()
}

fn periodic_words(d: &Dfa) -> Result<BTreeSet<PeriodicWord>> {
    Ok(enumerate_periodic(d)?.into_iter().collect())
}

/// Every prefix of the word `path · morphism(source)` is accepted.
fn prefixes_accepted(d: &Dfa, path: &Word, image: &[u8]) -> bool {
    let mut q = d.run(d.start(), path.symbols());
    if !d.is_accepting(q) {
        return false;
    }
    for &a in image {
        q = d.next(q, a);
        if !d.is_accepting(q) {
            return false;
        }
    }
    true
}

fn classifications(r: &mut Runner) {
    let d8 = ConstraintSpec::max_distinct(2, 8);
    r.check(
        2,
        Group::Distinct,
        "classify/D_8(Σ_2)",
        "NoInfiniteWords, longest word 8",
        false,
        |r| {
            let d = &r.dfa(&d8)?.minimized;
            let class = analyze(d).classification;
            let longest = d.longest_accepted();
            let oracle = longest_word(&d8, d.state_count())?;
            Ok((
                format!("{}, longest {longest:?}, oracle {oracle:?}", class.name()),
                class == Classification::NoInfiniteWords && longest == Some(8) && oracle == Longest::Finite(8),
            ))
        },
    );

    let d9 = ConstraintSpec::max_distinct(2, 9);
    r.check(
        2,
        Group::Distinct,
        "classify/D_9(Σ_2)",
        "12 words, conjugates of 001011 and 001101",
        false,
        |r| {
            let d = &r.dfa(&d9)?.minimized;
            let words = periodic_words(d)?;
            let expected: BTreeSet<PeriodicWord> = conjugates("001011", 2)
                .into_iter()
                .chain(conjugates("001101", 2))
                .collect();
            Ok((
                format!("{} words: {}", words.len(), fmt_words(&words)),
                words == expected,
            ))
        },
    );

    let d10 = ConstraintSpec::max_distinct(2, 10);
    r.check(
        2,
        Group::Distinct,
        "classify/D_10(Σ_2)",
        "no birecurrence, 52 words, 40 stabilizing at 10 palindromes as listed, 12 at 9",
        false,
        |r| {
            let d = &r.dfa(&d10)?.minimized;
            let bi = birecurrent_witness(d);
            let words = periodic_words(d)?;
            let mut ten = BTreeSet::new();
            let mut nine = BTreeSet::new();
            let mut others = 0;
            for p in &words {
                let c = verify_ultimately_periodic(p, &d10);
                match (c.accepted && c.stabilized, c.palfac_size) {
                    (true, 10) => ten.insert(p.clone()),
                    (true, 9) => nine.insert(p.clone()),
                    _ => {
                        others += 1;
                        false
                    }
                };
            }
            let listed: BTreeSet<PeriodicWord> = ["0001011", "0001101", "0010111", "0011101"]
                .iter()
                .flat_map(|x| conjugates(x, 2))
                .chain(with_preperiods(
                    &["0", "01", "111", "0011", "11011", "101011"],
                    "001011",
                ))
                .chain(with_preperiods(
                    &["0", "11", "001", "0101", "11101", "101101"],
                    "001101",
                ))
                .collect();
            let d9_words: BTreeSet<PeriodicWord> = conjugates("001011", 2)
                .into_iter()
                .chain(conjugates("001101", 2))
                .collect();
            Ok((
                format!(
                    "birecurrent {}, {} words, {} at 10 (listed: {}), {} at 9, {} other",
                    bi.is_some(),
                    words.len(),
                    ten.len(),
                    ten == listed,
                    nine.len(),
                    others
                ),
                bi.is_none() && words.len() == 52 && ten == listed && nine == d9_words && others == 0,
            ))
        },
    );

    let e4 = ConstraintSpec::max_len(2, 4);
    r.check(
        2,
        Group::Length,
        "classify/E_4(Σ_2)",
        "the 20 listed words",
        false,
        |r| {
            let d = &r.dfa(&e4)?.minimized;
            let words = periodic_words(d)?;
            let expected: BTreeSet<PeriodicWord> = conjugates("001011", 2)
                .into_iter()
                .chain(conjugates("001101", 2))
                .chain(with_preperiods(&["0", "00", "111", "1111"], "001011"))
                .chain(with_preperiods(&["0", "00", "11101", "111101"], "001101"))
                .collect();
            Ok((
                format!("{} words: {}", words.len(), fmt_words(&words)),
                expected.len() == 20 && words == expected,
            ))
        },
    );

    for spec in [ConstraintSpec::max_len(3, 1), ConstraintSpec::max_distinct(3, 4)] {
        let group = if matches!(spec.family, crate::construct::Family::MaxLen(_)) {
            Group::Length
        } else {
            Group::Distinct
        };
        r.check(
            2,
            group,
            &format!("classify/{spec}"),
            "the 6 words (abc)^ω",
            false,
            |r| {
                let d = &r.dfa(&spec)?.minimized;
                let words = periodic_words(d)?;
                let expected: BTreeSet<PeriodicWord> =
                    conjugates("012", 3).into_iter().chain(conjugates("021", 3)).collect();
                Ok((
                    format!("{} words: {}", words.len(), fmt_words(&words)),
                    words == expected,
                ))
            },
        );
    }

    let mut birecurrent: Vec<(ConstraintSpec, Group, &str, &str)> = vec![
        (
            ConstraintSpec::max_distinct(2, 11),
            Group::Distinct,
            "0001011001011",
            "001011001011",
        ),
        (ConstraintSpec::max_distinct(3, 5), Group::Distinct, "0012", "012"),
        (ConstraintSpec::max_len(2, 5), Group::Length, "01010110", "0010101110"),
        (ConstraintSpec::max_len(3, 2), Group::Length, "211002", "11002"),
        (sigma4(), Group::Length, "2301", "301"),
        (
            ConstraintSpec::max_len_by_parity(2, 2, 5),
            Group::ParityLength,
            "10100011",
            "1010100011",
        ),
        (
            ConstraintSpec::max_len_by_parity(2, 6, 3),
            Group::ParityLength,
            "110010",
            "1111000010",
        ),
        (
            ConstraintSpec::max_len_by_parity(3, 0, 3),
            Group::ParityLength,
            "021210102",
            "1210102",
        ),
    ];
    for (e, o, _, x0, x1) in T_APERIODIC {
        birecurrent.push((r.t(2, e, o), Group::ParityCount, x0, x1));
    }
    birecurrent.push((r.t(3, 1, 5), Group::ParityCount, "01012", "012"));
    for (spec, group, x0, x1) in birecurrent {
        let expected = format!("birecurrent; {x0} and {x1} loop at a common state");
        r.check(2, group, &format!("classify/{spec}"), &expected, false, |r| {
            let d = &r.dfa(&spec)?.minimized;
            let k = spec.alphabet_size;
            let report = analyze(d);
            let common = common_cycle_state(d, &w(x0, k), &w(x1, k));
            let found = match &report.birecurrent {
                Some(b) => format!("state {} with {} / {}", b.state, b.x0, b.x1),
                None => "none".into(),
            };
            Ok((
                format!(
                    "{}; witness {found}; listed pair loops at {common:?}",
                    report.classification.name()
                ),
                report.classification == Classification::UncountablyManyAperiodic && common.is_some(),
            ))
        });
    }

    for (e, o, _, example) in T_PERIODIC {
        let spec = r.t(2, e, o);
        let expected = format!("FinitelyManyPeriodic, {example} among the words");
        r.check(
            2,
            Group::ParityCount,
            &format!("classify/{spec}"),
            &expected,
            false,
            |r| {
                let d = &r.dfa(&spec)?.minimized;
                let target = PeriodicWord::parse(example, 2)?;
                let report = analyze(d);
                let detail = match &report.classification {
                    Classification::FinitelyManyPeriodic(words) => {
                        format!("{} words, example present: {}", words.len(), words.contains(&target))
                    }
                    _ => match &report.birecurrent {
                        Some(b) => format!("cycles {} and {} at state {}", b.x0, b.x1, b.state),
                        None => String::new(),
                    },
                };
                let pass =
                    matches!(&report.classification, Classification::FinitelyManyPeriodic(ws) if ws.contains(&target));
                Ok((format!("{}; {detail}", report.classification.name()), pass))
            },
        );
        if r.options.empty_word == EmptyWord::NotCounted {
            let counted = ConstraintSpec::count_by_parity(2, e, o, EmptyWord::Counted);
            r.check(
                2,
                Group::ParityCount,
                &format!("classify/{counted}"),
                &format!("with ε counted: {expected}"),
                true,
                |r| {
                    let b = r.dfa(&counted)?;
                    let target = PeriodicWord::parse(example, 2)?;
                    let class = analyze(&b.minimized).classification;
                    let pass = matches!(&class, Classification::FinitelyManyPeriodic(ws) if ws.contains(&target));
                    Ok((format!("{} ({} states)", class.name(), b.minimal_states()), pass))
                },
            );
        }
    }

    let d11 = ConstraintSpec::max_distinct(2, 11);
    r.check(
        2,
        Group::Distinct,
        "morphism-h/D_11(Σ_2)",
        "path · h(t) accepted for prefixes up to 10^4",
        false,
        |r| {
            let d = &r.dfa(&d11)?.minimized;
            let b = birecurrent_witness(d).ok_or_else(|| Error::Contract("no witness".into()))?;
            let m = witness_morphisms(&b)?;
            let path = path_from_start(d, b.state).ok_or_else(|| Error::Contract("unreachable".into()))?;
            let mut image = m.h.apply_symbols(thue_morse(10_000).symbols())?;
            image.truncate(10_000);
            Ok((
                format!(
                    "x0 {} x1 {} via {}: {}",
                    b.x0,
                    b.x1,
                    path,
                    prefixes_accepted(d, &path, &image)
                ),
                prefixes_accepted(d, &path, &image),
            ))
        },
    );
    r.check(
        2,
        Group::Distinct,
        "morphism-g/D_11(Σ_2)",
        "fixed point of g from the listed pair accepted up to 10^4",
        false,
        |r| {
            let d = &r.dfa(&d11)?.minimized;
            let b = crate::analyze::Birecurrence {
                state: common_cycle_state(d, &w("0001011001011", 2), &w("001011001011", 2))
                    .ok_or_else(|| Error::Contract("listed pair does not loop".into()))?,
                x0: w("0001011001011", 2),
                x1: w("001011001011", 2),
            };
            let m = witness_morphisms(&b)?;
            let g = m.g.as_ref().ok_or_else(|| Error::Contract("g unavailable".into()))?;
            let a = m.g_letter.expect("letter with g");
            let fixed = g.fixed_point_prefix(a, 10_000)?;
            let ok = prefixes_accepted(d, &Word::empty(2), fixed.symbols());
            Ok((format!("g from letter {a}: {ok}"), ok))
        },
    );
}

fn terms(r: &Runner, spec: &ConstraintSpec, n: usize) -> Result<Vec<BigInt>> {
    Ok(sequence(&transfer_matrix(&r.dfa(spec)?.minimized), n))
}

fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Narayana's cows: 1, 1, 1, 2, 3, 4, 6, 9, ...
fn narayana(n: usize) -> BigInt {
    let mut v = vec![BigInt::one(); 3];
    while v.len() <= n {
        let m = v.len();
        v.push(&v[m - 1] + &v[m - 3]);
    }
    v[n].clone()
}

fn sequences(r: &mut Runner) {
    const D211: [u64; 42] = [
        1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 292, 270, 268, 276, 276, 288, 320, 340, 364, 388, 404, 428, 476,
        512, 560, 610, 644, 692, 768, 840, 924, 1020, 1100, 1190, 1316, 1452, 1612, 1786, 1952, 2134, 2348,
    ];
    let d11 = ConstraintSpec::max_distinct(2, 11);
    r.check(
        3,
        Group::Distinct,
        "sequence/d_{2,11}(0..41)",
        "the 42 listed values",
        false,
        |r| {
            let a = terms(r, &d11, 41)?;
            let bad: Vec<usize> = (0..42).filter(|&i| a[i] != BigInt::from(D211[i])).collect();
            Ok((format!("{} mismatches {bad:?}", bad.len()), bad.is_empty()))
        },
    );
    let d35 = ConstraintSpec::max_distinct(3, 5);
    r.check(
        3,
        Group::Distinct,
        "sequence/d_{3,5}(0..8)",
        "1 3 9 27 81 42 54 66 78",
        false,
        |r| {
            let a = terms(r, &d35, 8)?;
            let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            let s = s.join(" ");
            Ok((s.clone(), s == "1 3 9 27 81 42 54 66 78"))
        },
    );

    type Closed = fn(usize) -> BigInt;
    let closed: Vec<(&str, ConstraintSpec, Group, usize, &str, Closed)> = vec![
        (
            "e_{3,2}",
            ConstraintSpec::max_len(3, 2),
            Group::Length,
            3,
            "6 F(n+1)",
            |n| fibonacci(n + 1) * 6,
        ),
        ("e_{4,1}", sigma4(), Group::Length, 2, "3 · 2^n", |n| {
            BigInt::from(3) << n
        }),
        (
            "r_{3,0,3}",
            ConstraintSpec::max_len_by_parity(3, 0, 3),
            Group::ParityLength,
            5,
            "6 Narayana(n-1)",
            |n| narayana(n - 1) * 6,
        ),
    ];
    for (name, spec, group, from, formula, f) in closed {
        let id = format!("sequence/{name}");
        r.check(3, group, &id, &format!("{formula} for {from} <= n <= 60"), false, |r| {
            let a = terms(r, &spec, 60)?;
            let bad: Vec<usize> = (from..=60).filter(|&n| a[n] != f(n)).collect();
            Ok((format!("{} mismatches {bad:?}", bad.len()), bad.is_empty()))
        });
    }
    let r303 = ConstraintSpec::max_len_by_parity(3, 0, 3);
    r.check(
        3,
        Group::ParityLength,
        "sequence/r_{3,0,3}/shifted",
        "6 Narayana(n+1) for 5 <= n <= 60, the form that fits C1 = 5.37711043",
        true,
        |r| {
            let a = terms(r, &r303, 60)?;
            let bad: Vec<usize> = (5..=60).filter(|&n| a[n] != narayana(n + 1) * 6).collect();
            Ok((format!("{} mismatches {bad:?}", bad.len()), bad.is_empty()))
        },
    );
}

/// `(X-1)(X+1)(X^2+X+1)(X^2-X+1)(X^7-X-1)(X^6+...+1)(X^8-X^2-1)`.
fn d211_annihilator() -> IntPoly {
    [
        poly(&[-1, 1]),
        poly(&[1, 1]),
        poly(&[1, 1, 1]),
        poly(&[1, -1, 1]),
        poly(&[-1, -1, 0, 0, 0, 0, 0, 1]),
        poly(&[1, 1, 1, 1, 1, 1, 1]),
        poly(&[-1, 0, -1, 0, 0, 0, 0, 0, 1]),
    ]
    .iter()
    .product()
}

struct AnnihilatorCase {
    name: &'static str,
    spec: ConstraintSpec,
    group: Group,
    expected: IntPoly,
    /// The recurrence must hold for every `n` in this range.
    range: Option<(usize, usize)>,
}

fn annihilator_cases() -> Vec<AnnihilatorCase> {
    vec![
        AnnihilatorCase {
            name: "d_{3,5}",
            spec: ConstraintSpec::max_distinct(3, 5),
            group: Group::Distinct,
            expected: poly(&[-1, -1, 0, 0, 1]),
            range: None,
        },
        AnnihilatorCase {
            name: "e_{3,2}",
            spec: ConstraintSpec::max_len(3, 2),
            group: Group::Length,
            expected: poly(&[-1, -1, 1]),
            range: None,
        },
        AnnihilatorCase {
            name: "e_{4,1}",
            spec: sigma4(),
            group: Group::Length,
            expected: poly(&[-2, 1]),
            range: None,
        },
        AnnihilatorCase {
            name: "e_{2,5}",
            spec: ConstraintSpec::max_len(2, 5),
            group: Group::Length,
            expected: poly(&[-1, -2, -2, -2, -3, 0, 0, 0, 0, 0, 1]),
            range: Some((20, 200)),
        },
        AnnihilatorCase {
            name: "r_{2,2,5}",
            spec: ConstraintSpec::max_len_by_parity(2, 2, 5),
            group: Group::ParityLength,
            expected: poly(&[-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1]),
            range: Some((16, 400)),
        },
        AnnihilatorCase {
            name: "r_{2,6,3}",
            spec: ConstraintSpec::max_len_by_parity(2, 6, 3),
            group: Group::ParityLength,
            expected: poly(&[-1, 0, 0, 0, -3, 0, -2, 0, -1, 0, 0, 0, 0, 0, 1]),
            range: Some((21, 400)),
        },
        AnnihilatorCase {
            name: "r_{3,0,3}",
            spec: ConstraintSpec::max_len_by_parity(3, 0, 3),
            group: Group::ParityLength,
            expected: poly(&[-1, 0, -1, 1]),
            range: Some((7, 400)),
        },
        AnnihilatorCase {
            name: "d_{2,11}",
            spec: ConstraintSpec::max_distinct(2, 11),
            group: Group::Distinct,
            expected: d211_annihilator(),
            range: Some((42, 300)),
        },
    ]
}

const TERMS: usize = 400;

fn min_poly_options(r: &Runner) -> MinPolyOptions {
    MinPolyOptions {
        seed: r.options.seed,
        execution: r.options.execution,
        ..Default::default()
    }
}

fn annihilators(r: &mut Runner) {
    for case in annihilator_cases() {
        let range = match case.range {
            Some((lo, hi)) => format!(", holding for {lo} <= n <= {hi}"),
            None => String::new(),
        };
        let expected = format!("{}{range}, from both paths", case.expected);
        r.check(
            4,
            case.group,
            &format!("annihilator/{}", case.name),
            &expected,
            false,
            |r| {
                let d = &r.dfa(&case.spec)?.minimized;
                let cs = transfer_matrix(d);
                let a = sequence(&cs, TERMS);
                let p = matrix_min_poly_with(&cs, &min_poly_options(r))?;
                let via_lda = lda(&p, &a)?;
                let via_terms = minimal_recurrence(&a)?;
                let holds = match case.range {
                    Some((lo, hi)) => {
                        let deg = via_lda.poly.degree();
                        lo >= deg
                            && (lo..=hi).all(|n| window_apply(&via_lda.poly, &a, n - deg).is_ok_and(|v| v.is_zero()))
                    }
                    None => true,
                };
                let pass = via_lda.poly == case.expected && via_lda == via_terms && holds;
                Ok((
                    format!(
                        "LDA {} (offset {}), terms {} (offset {}), range holds {holds}",
                        via_lda.poly, via_lda.offset, via_terms.poly, via_terms.offset
                    ),
                    pass,
                ))
            },
        );
    }
}

fn factors(list: &[(&[i64], usize)]) -> Vec<(IntPoly, usize)> {
    let mut v: Vec<(IntPoly, usize)> = list.iter().map(|(c, e)| (poly(c), *e)).collect();
    v.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    v
}

fn fmt_factors(v: &[(IntPoly, usize)]) -> String {
    let s: Vec<String> = v
        .iter()
        .map(|(f, e)| {
            let base = if f.degree() == 1 && f.coeff(0).is_zero() {
                "X".to_string()
            } else {
                format!("({f})")
            };
            if *e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect();
    s.join(" ")
}

type MinPolyCase = (&'static str, ConstraintSpec, Group, Vec<(IntPoly, usize)>);

fn min_polys(r: &mut Runner) {
    let cases: Vec<MinPolyCase> = vec![
        (
            "D_5(Σ_3)",
            ConstraintSpec::max_distinct(3, 5),
            Group::Distinct,
            factors(&[
                (&[0, 1], 5),
                (&[-1, 1], 1),
                (&[-3, 1], 1),
                (&[1, 1, 1], 1),
                (&[-1, -1, 0, 0, 1], 1),
            ]),
        ),
        (
            "e_{2,5}",
            ConstraintSpec::max_len(2, 5),
            Group::Length,
            factors(&[
                (&[0, 1], 10),
                (&[-2, 1], 1),
                (&[-1, -2, -2, -2, 1, 0, 0, 0, 0, 0, 1], 1),
                (&[-1, -2, -2, -2, -3, 0, 0, 0, 0, 0, 1], 1),
            ]),
        ),
        (
            "E_2(Σ_3)",
            ConstraintSpec::max_len(3, 2),
            Group::Length,
            factors(&[(&[0, 1], 3), (&[-3, 1], 1), (&[-1, -1, 1], 1), (&[1, 2, 2, 1, 1], 1)]),
        ),
        (
            "Σ_4 allowed set",
            sigma4(),
            Group::Length,
            factors(&[
                (&[0, 1], 2),
                (&[-1, 1], 1),
                (&[-2, 1], 1),
                (&[-4, 1], 1),
                (&[1, 1], 1),
                (&[2, 1, 1], 1),
            ]),
        ),
        (
            "r_{2,2,5}",
            ConstraintSpec::max_len_by_parity(2, 2, 5),
            Group::ParityLength,
            factors(&[(&[0, 1], 6), (&[-2, 1], 1), (&[-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1], 1)]),
        ),
        (
            "r_{2,6,3}",
            ConstraintSpec::max_len_by_parity(2, 6, 3),
            Group::ParityLength,
            factors(&[
                (&[0, 1], 7),
                (&[-2, 1], 1),
                (&[1, 0, 1], 1),
                (&[-1, 0, 0, 0, -3, 0, -2, 0, -1, 0, 0, 0, 0, 0, 1], 1),
                (&[-1, 0, 1, 0, 0, 0, -2, 0, 1, 0, -1, 0, 1], 1),
            ]),
        ),
        (
            "R_{0,3}(Σ_3)",
            ConstraintSpec::max_len_by_parity(3, 0, 3),
            Group::ParityLength,
            factors(&[
                (&[0, 1], 4),
                (&[-3, 1], 1),
                (&[1, -1, 1], 1),
                (&[-1, 0, -1, 1], 1),
                (&[1, 1, 2, 2, 1], 1),
            ]),
        ),
        (
            "D_11(Σ_2)",
            ConstraintSpec::max_distinct(2, 11),
            Group::Distinct,
            factors(&[
                (&[0, 1], 15),
                (&[-1, 1], 1),
                (&[-2, 1], 1),
                (&[1, 1], 1),
                (&[1, 0, 1], 1),
                (&[1, 1, 1], 1),
                (&[1, -1, 1], 1),
                (&[-1, -1, 0, 0, 0, 0, 0, 1], 1),
                (&[1, 0, 0, 0, 1], 1),
                (&[1, 1, 1, 1, 1, 1, 1], 1),
                (&[-1, 0, -1, 0, 0, 0, 0, 0, 1], 1),
            ]),
        ),
    ];
    for (name, spec, group, expected) in cases {
        r.check(
            5,
            group,
            &format!("minpoly/{name}"),
            &fmt_factors(&expected),
            false,
            |r| {
                let d = &r.dfa(&spec)?.minimized;
                let p = matrix_min_poly_with(&transfer_matrix(d), &min_poly_options(r))?;
                let f = factor_int_poly(&p)?;
                Ok((fmt_factors(&f.factors), f.unit.is_one() && f.factors == expected))
            },
        );
    }
}

fn asymptotics(r: &mut Runner) {
    // (name, spec, group, root, C1, optional C2)
    type Case = (&'static str, ConstraintSpec, Group, f64, f64, Option<f64>);
    let cases: Vec<Case> = vec![
        (
            "d_{2,11}",
            ConstraintSpec::max_distinct(2, 11),
            Group::Distinct,
            1.112775684279,
            20.665,
            None,
        ),
        (
            "d_{3,5}",
            ConstraintSpec::max_distinct(3, 5),
            Group::Distinct,
            1.2207440846,
            16.07007,
            None,
        ),
        (
            "e_{2,5}",
            ConstraintSpec::max_len(2, 5),
            Group::Length,
            1.36927381628918,
            9.8315779,
            None,
        ),
        (
            "r_{2,2,5}",
            ConstraintSpec::max_len_by_parity(2, 2, 5),
            Group::ParityLength,
            1.0804184273981,
            15.991809,
            Some(0.023895),
        ),
        (
            "r_{2,6,3}",
            ConstraintSpec::max_len_by_parity(2, 6, 3),
            Group::ParityLength,
            1.244528319539183,
            11.58110542,
            Some(0.00264754),
        ),
        (
            "r_{3,0,3}",
            ConstraintSpec::max_len_by_parity(3, 0, 3),
            Group::ParityLength,
            1.465571231876768,
            5.37711043,
            None,
        ),
    ];
    for (name, spec, group, root, c1, c2) in cases {
        let mut expected = format!("α = {root} ± 1e-9, C1 = {c1} ± 1%");
        if let Some(c2) = c2 {
            expected.push_str(&format!(", C2 = {c2} ± 10%"));
        }
        let fit_cell: RefCell<Option<crate::recur::AsymptoticFit>> = RefCell::new(None);
        r.check(6, group, &format!("asymptotics/{name}"), &expected, false, |r| {
            let d = &r.dfa(&spec)?.minimized;
            let cs = transfer_matrix(d);
            let a = sequence(&cs, TERMS);
            let p = matrix_min_poly_with(&cs, &min_poly_options(r))?;
            let ann = lda(&p, &a)?;
            let alpha = dominant_root(&ann.poly)?.ok_or_else(|| Error::Contract("no real root".into()))?;
            let fit = asymptotic_fit(&a, &alpha)?;
            let root_ok = (alpha.midpoint() - root).abs() <= 1e-9;
            let c1_ok = ratio_ok(fit.c1, c1, 0.01);
            let c2_ok = match (c2, fit.c2) {
                (None, _) => fit.mode == GrowthMode::Single,
                (Some(e), Some(got)) => ratio_ok(got, e, 0.10),
                (Some(_), None) => false,
            };
            let mut actual = format!("α = {:.13}, C1 = {:.8}", alpha.midpoint(), fit.c1);
            if let Some(got) = fit.c2 {
                actual.push_str(&format!(", C2 = {got:.8}"));
            }
            actual.push_str(&format!(" ({})", fit.method));
            *fit_cell.borrow_mut() = Some(fit);
            Ok((actual, root_ok && c1_ok && c2_ok))
        });
        if let Some(fit) = fit_cell.into_inner() {
            r.check(
                6,
                group,
                &format!("asymptotics/{name}/ratio-mean"),
                &format!("mean of a(n)/α^n over n in 301..=400 near C1 = {c1} ± 1%"),
                true,
                |_| {
                    Ok((
                        format!("{:.6} (spread {:.2e})", fit.empirical_c1, fit.drift),
                        ratio_ok(fit.empirical_c1, c1, 0.01),
                    ))
                },
            );
        }
    }
}

fn oracle_sweep(r: &mut Runner) {
    for (spec, group) in instances(r) {
        let max_n = match spec.alphabet_size {
            2 => 14,
            3 => 10,
            _ => 8,
        };
        let id = format!("oracle/{spec}");
        r.check(
            7,
            group,
            &id,
            &format!("brute force = transfer matrix for n <= {max_n}"),
            false,
            |r| {
                if !r.wants(7, Group::Oracle) && !r.options.groups.is_empty() && !r.options.groups.contains(&group) {
                    return Ok(("skipped".into(), true));
                }
                let options = OracleOptions {
                    budget: r.options.oracle_budget,
                    witness_cap: 0,
                    execution: r.options.execution,
                };
                let brute = brute_counts_with(&spec, max_n, &options)?;
                let matrix = terms(r, &spec, max_n)?;
                let bad: Vec<usize> = (0..=max_n).filter(|&n| BigInt::from(brute[n]) != matrix[n]).collect();
                Ok((
                    format!("{} mismatches {bad:?}; a({max_n}) = {}", bad.len(), brute[max_n]),
                    bad.is_empty(),
                ))
            },
        );
    }
}

fn constructions(r: &mut Runner) {
    let cases = vec![
        ConstraintSpec::max_len(2, 4),
        ConstraintSpec::max_len(2, 5),
        ConstraintSpec::max_len(3, 1),
        ConstraintSpec::max_len(3, 2),
        sigma4(),
    ];
    for spec in cases {
        r.check(
            8,
            Group::Construction,
            &format!("avoidance/{spec}"),
            "isomorphic minimal automata",
            false,
            |r| {
                let direct = &r.dfa(&spec)?.minimized;
                let allowed = spec
                    .as_allowed_set()
                    .ok_or_else(|| Error::Contract(format!("{spec} has no finite allowed set")))?;
                let forbidden = forbidden_set(&allowed, spec.alphabet_size)?;
                let avoid = build_avoidance(&forbidden, spec.alphabet_size)?.minimize();
                let iso = isomorphic(direct, &avoid)?;
                Ok((
                    format!(
                        "{} forbidden, {} vs {} states, isomorphic {iso}",
                        forbidden.len(),
                        direct.live_state_count(),
                        avoid.live_state_count()
                    ),
                    iso,
                ))
            },
        );
    }
    let listed = "00 11 22 33 010 020 030 101 121 131 202 212 232 303 313 323";
    r.check(8, Group::Construction, "forbidden/Σ_4", listed, false, |_| {
        let allowed = sigma4().as_allowed_set().expect("allowed set");
        let got = forbidden_set(&allowed, 4)?;
        let got_s: Vec<String> = got.iter().map(|w| w.to_string()).collect();
        let expected: BTreeSet<Word> = listed.split(' ').map(|s| w(s, 4)).collect();
        Ok((got_s.join(" "), got == expected))
    });
}

fn stabilization(r: &mut Runner) {
    let d13 = ConstraintSpec::max_distinct(2, 13);
    let g0 = w("001101000110", 2);
    let s01 = w("01", 2);
    r.check(
        9,
        Group::Stabilization,
        "tau/G_n on D_13(Σ_2)",
        "τ(G_n) = τ(G_{n+1}) for n = 2,3; τ(G_n) = τ(G_n^R) for n = 1..4; all G_n accepted; |PalFac(G_4)| = 13",
        false,
        |r| {
            let d = &r.dfa(&d13)?.minimized;
            let rep = check_stabilization(d, &g0, &s01, 4)?;
            let eq: Vec<Option<bool>> = rep.steps.iter().map(|s| s.equals_next).collect();
            let rev: Vec<bool> = rep.steps.iter().map(|s| s.reversal_equal).collect();
            let g4 = perturbed_symmetry(&g0, &s01, 4)?;
            let pal = palindromic_factors(&g4).len();
            let pass = eq[2] == Some(true)
                && eq[3] == Some(true)
                && rev[1..=4].iter().all(|&b| b)
                && rep.all_accepted
                && pal == 13;
            Ok((
                format!(
                    "equals next {eq:?}, reversal {rev:?}, all accepted {}, |PalFac(G_4)| = {pal}",
                    rep.all_accepted
                ),
                pass,
            ))
        },
    );
    r.check(
        9,
        Group::Stabilization,
        "tau/G_3 recursion on D_13(Σ_2)",
        "τ(G_2) τ(01) τ(G_2^R) = τ(G_3)",
        false,
        |r| {
            let d = &r.dfa(&d13)?.minimized;
            let g2 = perturbed_symmetry(&g0, &s01, 2)?;
            let g3 = perturbed_symmetry(&g0, &s01, 3)?;
            let lhs = crate::verify::compose(
                &crate::verify::compose(&transform(d, &g2)?, &transform(d, &s01)?)?,
                &transform(d, &crate::words::reverse(&g2))?,
            )?;
            let ok = lhs == transform(d, &g3)?;
            Ok((ok.to_string(), ok))
        },
    );
    let s4 = sigma4();
    let b0 = w("01", 4);
    let s23 = w("23", 4);
    r.check(
        9,
        Group::Stabilization,
        "tau/B_n on Σ_4",
        "τ(B_{n+1}) = τ(B_n) for n = 1..5; all B_n accepted; |PalFac(B_5)| = 5",
        false,
        |r| {
            let d = &r.dfa(&s4)?.minimized;
            let rep = check_stabilization(d, &b0, &s23, 6)?;
            let eq: Vec<Option<bool>> = rep.steps.iter().map(|s| s.equals_next).collect();
            let pal = palindromic_factors(&perturbed_symmetry(&b0, &s23, 5)?).len();
            let pass = (1..=5).all(|n| eq[n] == Some(true)) && rep.all_accepted && pal == 5;
            Ok((
                format!(
                    "equals next {eq:?}, reversal from 1 {}, all accepted {}, |PalFac(B_5)| = {pal}",
                    rep.reversal_equal_from_one, rep.all_accepted
                ),
                pass,
            ))
        },
    );
    r.check(
        9,
        Group::Stabilization,
        "palfac/h(t) on Σ_4",
        "PalFac(h(thue_morse(1000))) = {ε,0,1,2,3} with h(0)=2301, h(1)=301",
        false,
        |r| {
            let h = Morphism::from_images(&[w("2301", 4), w("301", 4)])?;
            let image = h.apply(&thue_morse(1000))?;
            let pf = palindromic_factors(&image);
            let expected = PalFacSet::from_set(["", "0", "1", "2", "3"].iter().map(|s| w(s, 4)).collect());
            let d = &r.dfa(&s4)?.minimized;
            let accepted = d.accepts_symbols(image.symbols());
            let got: Vec<String> = pf.palindromes().iter().map(|p| format!("{p:?}")).collect();
            Ok((
                format!("{{{}}}, accepted {accepted}", got.join(",")),
                pf == expected && accepted,
            ))
        },
    );
}

fn random_dfa(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Dfa {
    let delta = (0..n * k).map(|_| rng.gen_range(0..n as u32)).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_table(k, delta, 0, accepting).expect("valid random automaton")
}

fn all_words(k: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k as u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn properties(r: &mut Runner) {
    let seed = r.options.seed;
    r.check(
        10,
        Group::Properties,
        "property/eertree",
        "palindromic tree = naive on 10^4 random words",
        false,
        |_| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = 0;
            for _ in 0..10_000 {
                let k = rng.gen_range(1..=4);
                let len = rng.gen_range(0..=40);
                let word = Word::new((0..len).map(|_| rng.gen_range(0..k as u8)).collect(), k)?;
                if palindromic_factors(&word) != naive_palindromic_factors(&word) {
                    bad += 1;
                }
            }
            Ok((format!("{bad} disagreements"), bad == 0))
        },
    );
    r.check(
        10,
        Group::Properties,
        "property/minimize",
        "minimization is idempotent and keeps the language (300 random automata)",
        false,
        |_| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
            let mut bad = 0;
            for _ in 0..300 {
                let k = rng.gen_range(1..=3);
                let n = rng.gen_range(1..=12);
                let d = random_dfa(&mut rng, n, k);
                let m = d.minimize();
                let idempotent = m.minimize() == m && m.is_minimal();
                let same = all_words(k, 7)
                    .iter()
                    .all(|w| d.accepts_symbols(w) == m.accepts_symbols(w));
                if !(idempotent && same) {
                    bad += 1;
                }
            }
            Ok((format!("{bad} failures"), bad == 0))
        },
    );
    let factorial_specs = vec![
        ConstraintSpec::max_distinct(2, 11),
        ConstraintSpec::max_len(3, 2),
        ConstraintSpec::max_len_by_parity(2, 6, 3),
        r.t(2, 5, 6),
        sigma4(),
    ];
    r.check(
        10,
        Group::Properties,
        "property/factorial",
        "sampled accepted words have all factors accepted and satisfy the constraint",
        false,
        |r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfac7);
            let mut bad = 0;
            let mut sampled = 0;
            for spec in &factorial_specs {
                let d = &r.dfa(spec)?.minimized;
                let k = d.alphabet_size();
                for _ in 0..200 {
                    // random walk through accepting states
                    let mut word = Vec::new();
                    let mut q = d.start();
                    for _ in 0..rng.gen_range(0..60) {
                        let options: Vec<u8> = (0..k as u8).filter(|&a| d.is_accepting(d.next(q, a))).collect();
                        if options.is_empty() {
                            break;
                        }
                        let a = options[rng.gen_range(0..options.len())];
                        word.push(a);
                        q = d.next(q, a);
                    }
                    sampled += 1;
                    let i = rng.gen_range(0..=word.len());
                    let j = rng.gen_range(i..=word.len());
                    if !spec.admits_word(&word) || !d.accepts_symbols(&word[i..j]) {
                        bad += 1;
                    }
                }
            }
            Ok((format!("{bad} failures in {sampled} samples"), bad == 0))
        },
    );
    let round_trip_specs = vec![
        ConstraintSpec::max_distinct(2, 9),
        ConstraintSpec::max_len(3, 2),
        sigma4(),
    ];
    r.check(
        10,
        Group::Properties,
        "property/round-trip",
        "Grail and JSON export/import give the same automaton",
        false,
        |r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x707);
            let mut automata: Vec<Dfa> = Vec::new();
            for spec in &round_trip_specs {
                automata.push(r.dfa(spec)?.minimized.clone());
            }
            for _ in 0..100 {
                let k = rng.gen_range(1..=4);
                let n = rng.gen_range(1..=10);
                automata.push(random_dfa(&mut rng, n, k).minimize());
            }
            let mut bad = 0;
            for d in &automata {
                for format in [Format::Grail, Format::Json] {
                    let back = import(&export(d, format), format);
                    let same = match (&back, format) {
                        (Ok(b), Format::Json) => b == d,
                        (Ok(b), _) => {
                            b.minimize().canonical() == d.canonical() && b.alphabet_size() == d.alphabet_size()
                        }
                        (Err(_), _) => false,
                    };
                    if !same {
                        bad += 1;
                    }
                }
            }
            Ok((format!("{bad} failures over {} automata", automata.len()), bad == 0))
        },
    );
}

/// Per-criterion outcome: `(criterion, title, passed, failed ids)`.
pub fn summarize(checks: &[Check]) -> Vec<(u8, &'static str, bool, Vec<String>)> {
    CRITERIA
        .iter()
        .filter(|(c, _)| checks.iter().any(|k| k.criterion == *c && !k.diagnostic))
        .map(|&(c, title)| {
            let failed: Vec<String> = checks
                .iter()
                .filter(|k| k.criterion == c && !k.diagnostic && !k.pass)
                .map(|k| k.id.clone())
                .collect();
            (c, title, failed.is_empty(), failed)
        })
        .collect()
}

/// Counts as plain integers for JSON output.
pub fn to_u128(x: &BigInt) -> Option<u128> {
    x.to_u128()
}
