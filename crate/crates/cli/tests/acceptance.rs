//! One line per acceptance criterion. Every criterion is run as stated;
//! the test asserts the ones not listed in `UNATTAINABLE`.

use parahoric_cli::checks::{check_for_criterion, discriminant_counts};
use parahoric_cli::{Status, SuiteConfig};
use std::time::{Duration, Instant};

/// Runtime limits in seconds; `None` means no limit is stated.
const LIMITS: [(u8, Option<u64>); 11] = [
    (1, Some(10)),
    (2, Some(30)),
    (3, Some(60)),
    (4, None),
    (5, Some(5)),
    (6, None),
    (7, Some(120)),
    (8, None),
    (9, Some(30)),
    (10, Some(600)),
    (11, Some(60)),
];

/// Criteria that cannot hold as stated, with the reason.
const UNATTAINABLE: [(u8, &str); 1] =
    [(6, "over F_2 the discriminant is tr^2, of even valuation, so v = 1 never occurs at q = 2")];

#[test]
fn acceptance() {
    let config = SuiteConfig::default();
    let mut unexpected = Vec::new();
    for (n, limit) in LIMITS {
        let check = check_for_criterion(n).expect("every criterion has a check");
        let start = Instant::now();
        let outcome = (check.run)(&config);
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |s| elapsed <= Duration::from_secs(s));
        let pass = outcome.status == Status::Pass && in_time;
        let limit_text = limit.map_or("none".to_string(), |s| format!("{s}s"));
        println!(
            "criterion {n:>2} [{}] {}: {} ({:.2}s, limit {limit_text}) {}",
            check.id,
            check.anchor,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.witness
        );
        match UNATTAINABLE.iter().find(|(k, _)| *k == n) {
            Some((_, why)) => println!("    expected failure: {why}"),
            None if !pass => unexpected.push(n),
            None => {}
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}

#[test]
fn discriminant_failure_is_confined_to_characteristic_two() {
    let config = SuiteConfig::default();
    for q in [3, 5] {
        let (ok, first) = discriminant_counts(q, config.samples, config.prec, config.seed).unwrap();
        assert_eq!(ok, config.samples, "q={q}: {first:?}");
    }
    let (ok, _) = discriminant_counts(2, config.samples, config.prec, config.seed).unwrap();
    assert_eq!(ok, 0);
}
