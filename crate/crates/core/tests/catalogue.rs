use palwords::par::Execution;
use palwords::reproduce::{is_known_discrepancy, run, summarize, Group, ReproduceOptions};

fn only(criteria: &[u8], groups: &[Group]) -> ReproduceOptions {
    ReproduceOptions {
        criteria: criteria.to_vec(),
        groups: groups.to_vec(),
        ..Default::default()
    }
}

#[test]
fn group_names_parse() {
    for g in Group::ALL {
        assert_eq!(g.name().parse::<Group>().unwrap(), g);
    }
    assert_eq!("R".parse::<Group>().unwrap(), Group::ParityLength);
    assert!("7".parse::<Group>().is_err());
}

#[test]
fn construction_checks_pass() {
    let checks = run(&only(&[8], &[]));
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
}

#[test]
fn selection_filters_by_group() {
    let checks = run(&only(&[1], &[Group::ParityLength]));
    assert_eq!(checks.len(), 3);
    assert!(checks
        .iter()
        .all(|c| c.group == Group::ParityLength && c.criterion == 1 && c.pass));
}

#[test]
fn sequential_and_parallel_agree() {
    let mut a = only(&[5, 7], &[Group::Length]);
    a.execution = Execution::Sequential;
    let mut b = a.clone();
    b.execution = Execution::Parallel;
    let (x, y) = (run(&a), run(&b));
    let strip = |v: &[palwords::reproduce::Check]| -> Vec<(String, String, bool)> {
        v.iter().map(|c| (c.id.clone(), c.actual.clone(), c.pass)).collect()
    };
    assert_eq!(strip(&x), strip(&y));
}

#[test]
fn parity_count_failures_are_the_documented_ones() {
    let checks = run(&only(&[2], &[Group::ParityCount]));
    let summary = summarize(&checks);
    assert_eq!(summary.len(), 1);
    let (_, _, pass, failed) = &summary[0];
    assert!(!pass);
    assert_eq!(failed.len(), 6);
    assert!(failed.iter().all(|id| is_known_discrepancy(id)));
}
