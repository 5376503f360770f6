use palwords::analyze::{classify, Classification, Morphism, PeriodicWord};
use palwords::automaton::{export, import, Dfa, Format};
use palwords::construct::{build_direct, ConstraintSpec, EmptyWord};
use palwords::oracle::brute_counts;
use palwords::recur::{sequence, transfer_matrix};
use palwords::verify::{compose, perturbed_symmetry, perturbed_symmetry_len, thue_morse, transform};
use palwords::words::{naive_palindromic_factors, palindromic_factors, reverse, Word};
use proptest::prelude::*;

fn word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k as u8, 0..=max_len).prop_map(move |s| Word::new(s, k).unwrap())
}

/// Small instances of every family, cheap enough to build per case.
/// Ternary caps stay at the sizes where the search space is small.
fn spec() -> impl Strategy<Value = ConstraintSpec> {
    prop_oneof![
        (2usize..=10).prop_map(|l| ConstraintSpec::max_distinct(2, l)),
        (2usize..=5).prop_map(|l| ConstraintSpec::max_distinct(3, l)),
        (0usize..=5).prop_map(|l| ConstraintSpec::max_len(2, l)),
        (0usize..=2).prop_map(|l| ConstraintSpec::max_len(3, l)),
        (0usize..=4, 1usize..=5).prop_map(|(e, o)| ConstraintSpec::max_len_by_parity(2, e, o)),
        (0usize..=1, 1usize..=3).prop_map(|(e, o)| ConstraintSpec::max_len_by_parity(3, e, o)),
        (1usize..=4, 1usize..=4, any::<bool>()).prop_map(|(e, o, counted)| {
            let empty = if counted {
                EmptyWord::Counted
            } else {
                EmptyWord::NotCounted
            };
            ConstraintSpec::count_by_parity(2, e, o, empty)
        }),
    ]
}

fn random_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=3, 1usize..=8).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(0..n as u32, n * k),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, acc)| Dfa::from_table(k, delta, 0, acc).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn palindromic_tree_matches_naive(w in (1usize..=4).prop_flat_map(|k| word(k, 60))) {
        prop_assert_eq!(palindromic_factors(&w), naive_palindromic_factors(&w));
    }

    #[test]
    fn palfac_is_closed_under_reversal(w in word(3, 40)) {
        prop_assert_eq!(palindromic_factors(&w), palindromic_factors(&reverse(&w)));
    }

    #[test]
    fn accepted_words_are_factorial(spec in spec(), seed in any::<u64>()) {
        let d = build_direct(&spec).unwrap().minimized;
        let k = spec.alphabet_size;
        // walk through accepting states, driven by the seed
        let mut x = seed;
        let mut q = d.start();
        let mut w = Vec::new();
        for _ in 0..40 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let options: Vec<u8> = (0..k as u8).filter(|&a| d.is_accepting(d.next(q, a))).collect();
            if options.is_empty() {
                break;
            }
            let a = options[(x >> 33) as usize % options.len()];
            w.push(a);
            q = d.next(q, a);
        }
        prop_assert!(spec.admits_word(&w));
        for i in 0..=w.len() {
            for j in i..=w.len() {
                prop_assert!(d.accepts_symbols(&w[i..j]));
            }
        }
    }

    #[test]
    fn automaton_agrees_with_constraint(spec in spec(), w in word(3, 14)) {
        let d = build_direct(&spec).unwrap().minimized;
        let symbols: Vec<u8> = w.symbols().iter().map(|&s| s % spec.alphabet_size as u8).collect();
        prop_assert_eq!(d.accepts_symbols(&symbols), spec.admits_word(&symbols));
    }

    #[test]
    fn oracle_equals_transfer_matrix(spec in spec()) {
        let max_n = if spec.alphabet_size == 2 { 12 } else { 8 };
        let d = build_direct(&spec).unwrap().minimized;
        let matrix = sequence(&transfer_matrix(&d), max_n);
        let brute = brute_counts(&spec, max_n).unwrap();
        for n in 0..=max_n {
            prop_assert_eq!(matrix[n].to_string(), brute[n].to_string());
        }
    }

    #[test]
    fn transformations_compose(u in word(2, 20), v in word(2, 20), z in word(2, 20)) {
        let d = build_direct(&ConstraintSpec::max_distinct(2, 11)).unwrap().minimized;
        let (tu, tv, tz) = (transform(&d, &u).unwrap(), transform(&d, &v).unwrap(), transform(&d, &z).unwrap());
        prop_assert_eq!(transform(&d, &u.concat(&v)).unwrap(), compose(&tu, &tv).unwrap());
        prop_assert_eq!(
            compose(&compose(&tu, &tv).unwrap(), &tz).unwrap(),
            compose(&tu, &compose(&tv, &tz).unwrap()).unwrap()
        );
    }

    #[test]
    fn perturbed_symmetry_lengths(seed in word(3, 10), infix in word(3, 4), n in 0usize..=6) {
        let x = perturbed_symmetry(&seed, &infix, n).unwrap();
        prop_assert_eq!(x.len() as u128, perturbed_symmetry_len(seed.len(), infix.len(), n));
        if n > 0 {
            let prev = perturbed_symmetry(&seed, &infix, n - 1).unwrap();
            prop_assert_eq!(x.len(), 2 * prev.len() + infix.len());
            prop_assert_eq!(x, prev.concat(&infix).concat(&reverse(&prev)));
        }
    }

    #[test]
    fn thue_morse_image_has_five_palindromes(n in 0usize..=1000) {
        let h = Morphism::from_images(&[Word::parse("2301", 4).unwrap(), Word::parse("301", 4).unwrap()]).unwrap();
        let image = h.apply(&thue_morse(n)).unwrap();
        let pf = palindromic_factors(&image);
        prop_assert!(pf.len() <= 5);
        prop_assert!(pf.max_len() <= 1);
    }

    #[test]
    fn minimize_is_idempotent_and_keeps_language(d in random_dfa(), w in word(3, 10)) {
        let m = d.minimize();
        prop_assert!(m.is_minimal());
        prop_assert_eq!(m.minimize(), m.clone());
        let symbols: Vec<u8> = w.symbols().iter().map(|&s| s % d.alphabet_size() as u8).collect();
        prop_assert_eq!(d.accepts_symbols(&symbols), m.accepts_symbols(&symbols));
    }

    #[test]
    fn exports_round_trip(d in random_dfa()) {
        let m = d.minimize();
        let json = import(&export(&m, Format::Json), Format::Json).unwrap();
        prop_assert_eq!(&json, &m);
        let grail = import(&export(&m, Format::Grail), Format::Grail).unwrap();
        prop_assert_eq!(grail.minimize().canonical(), m.canonical());
    }

    #[test]
    fn periodic_normalization_keeps_the_word(y in word(2, 6), x in word(2, 6).prop_filter("nonempty", |x| !x.is_empty())) {
        let p = PeriodicWord::new(y.clone(), x.clone()).unwrap();
        prop_assert!(p.preperiod.len() <= y.len());
        prop_assert!(p.period.len() <= x.len());
        let long: Vec<u8> = y.symbols().iter().chain(x.symbols().iter().cycle().take(40)).copied().collect();
        let normal = p.prefix(60);
        prop_assert_eq!(&normal[..long.len().min(normal.len())], &long[..long.len().min(normal.len())]);
        prop_assert_eq!(PeriodicWord::parse(&p.to_string(), 2).unwrap(), p);
    }
}

fn rank(c: &Classification) -> u8 {
    match c {
        Classification::NoInfiniteWords => 0,
        Classification::FinitelyManyPeriodic(_) => 1,
        Classification::InfinitelyManyPeriodic => 2,
        Classification::UncountablyManyAperiodic => 3,
    }
}

#[test]
fn distinct_caps_are_monotone() {
    for k in [2, 3] {
        let top = if k == 2 { 11 } else { 5 };
        let mut prev: Option<(Vec<String>, u8, Dfa)> = None;
        for l in 1..=top {
            let d = build_direct(&ConstraintSpec::max_distinct(k, l)).unwrap().minimized;
            let counts: Vec<String> = sequence(&transfer_matrix(&d), 30)
                .iter()
                .map(|x| x.to_string())
                .collect();
            let class = rank(&classify(&d));
            if let Some((pc, pr, pd)) = &prev {
                for n in 0..=30 {
                    let (a, b): (u128, u128) = (pc[n].parse().unwrap(), counts[n].parse().unwrap());
                    assert!(a <= b, "k={k} l={l} n={n}");
                }
                assert!(*pr <= class);
                // L(D_l) ⊆ L(D_{l+1}) on every word short enough to enumerate
                for len in 0..=8u32 {
                    for code in 0..(k as u64).pow(len) {
                        let w: Vec<u8> = (0..len).map(|i| (code / (k as u64).pow(i) % k as u64) as u8).collect();
                        assert!(!pd.accepts_symbols(&w) || d.accepts_symbols(&w));
                    }
                }
            }
            prev = Some((counts, class, d));
        }
    }
}

#[test]
fn length_caps_are_monotone() {
    for (k, top) in [(2, 6), (3, 2)] {
        let mut prev: Option<Vec<String>> = None;
        for l in 0..=top {
            let d = build_direct(&ConstraintSpec::max_len(k, l)).unwrap().minimized;
            let counts: Vec<String> = sequence(&transfer_matrix(&d), 30)
                .iter()
                .map(|x| x.to_string())
                .collect();
            if let Some(pc) = &prev {
                for n in 0..=30 {
                    assert!(pc[n].parse::<u128>().unwrap() <= counts[n].parse::<u128>().unwrap());
                }
            }
            prev = Some(counts);
        }
    }
}
