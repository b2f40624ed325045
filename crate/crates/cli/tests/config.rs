use parahoric_cli::{parse_config, render, run_suite, ConfigError, Format, Status, Suite, SuiteConfig, CHECKS};
use proptest::prelude::*;

#[test]
fn parses_the_basic_example() {
    let c = parse_config("suite pgl2\nq 5\nprec 8").unwrap();
    assert_eq!(c.suites, vec![Suite::Pgl2]);
    assert_eq!(c.q, Some(vec![5]));
    assert_eq!(c.prec, 8);
    assert!(c.warnings.is_empty());
}

#[test]
fn unknown_key_names_its_line() {
    let e = parse_config("suite pgl2\n\nfoo 3\n").unwrap_err();
    assert_eq!(e, ConfigError::UnknownKey { line: 3, key: "foo".into() });
    assert!(e.to_string().contains("line 3"));
}

#[test]
fn duplicate_key_last_wins_with_warning() {
    let c = parse_config("prec 6\nprec 9\n").unwrap();
    assert_eq!(c.prec, 9);
    assert_eq!(c.warnings.len(), 1);
    assert!(c.warnings[0].contains("line 2"));
}

#[test]
fn q_one_is_rejected() {
    match parse_config("suite pgl2\nq 1\n") {
        Err(ConfigError::BadValue { line: 2, key, msg }) => {
            assert_eq!(key, "q");
            assert!(msg.contains("prime power"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn other_bad_values() {
    assert!(matches!(parse_config("prec 0"), Err(ConfigError::BadValue { line: 1, .. })));
    assert!(matches!(parse_config("prec"), Err(ConfigError::MissingValue { line: 1, .. })));
    assert!(matches!(parse_config("suite nope"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(parse_config("witt_p 9"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(parse_config("lattice_p 3 5"), Err(ConfigError::BadValue { .. })));
    assert!(matches!(parse_config("format xml"), Err(ConfigError::BadValue { .. })));
}

#[test]
fn comments_and_blank_lines() {
    let c = parse_config("# header\n\nsuite witt coxeter  # two suites\nformat text\n").unwrap();
    assert_eq!(c.suites, vec![Suite::Coxeter, Suite::Witt]);
    assert_eq!(c.format, Format::Text);
}

#[test]
fn defaults_round_trip() {
    let c = SuiteConfig::default();
    assert_eq!(parse_config(&render(&c)).unwrap(), c);
}

fn arb_config() -> impl Strategy<Value = SuiteConfig> {
    (
        prop::sample::subsequence(Suite::ALL.to_vec(), 0..=7),
        prop::option::of(prop::sample::subsequence(vec![2u64, 3, 4, 5, 7, 8, 9], 1..4)),
        1i64..20,
        0usize..10,
        any::<u64>(),
        prop::sample::subsequence(vec![6usize, 8, 10, 12], 1..4),
        prop::option::of("[a-z]{1,8}\\.tsv"),
        prop::bool::ANY,
    )
        .prop_map(|(suites, q, prec, max_len, seed, windows, output, text)| SuiteConfig {
            suites,
            q,
            prec,
            max_len,
            seed,
            windows,
            output,
            format: if text { Format::Text } else { Format::Tsv },
            ..SuiteConfig::default()
        })
}

proptest! {
    #[test]
    fn render_parse_round_trip(c in arb_config()) {
        let text = render(&c);
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(render(&back), text);
    }
}

#[test]
fn empty_selection_gives_empty_report() {
    let r = run_suite(&parse_config("").unwrap());
    assert!(r.rows.is_empty());
    assert!(!r.failed());
    assert_eq!(r.to_tsv(), "");
}

#[test]
fn pgl2_q2_reports_two_fixed_points() {
    let c = parse_config("suite pgl2\nq 2\nprec 6\n").unwrap();
    let r = run_suite(&c);
    let text = r.to_text();
    assert!(text.contains("fixed points: count=2: q=2:"), "{text}");
    let row = r.rows.iter().find(|x| x.check_id == "C07").unwrap();
    assert_eq!(row.status, Status::Pass);
    // the characteristic-two discriminant row fails, so the run fails
    assert!(r.failed());
}

#[test]
fn budget_exceeded_is_skipped() {
    let c = parse_config("suite witt\nbudget 100\n").unwrap();
    let r = run_suite(&c);
    let status = |id: &str| r.rows.iter().find(|x| x.check_id == id).unwrap().status.clone();
    assert_eq!(status("C09"), Status::SkippedBudget);
    assert_eq!(status("C10"), Status::SkippedBudget);
    assert_eq!(status("C11"), Status::Pass);
    assert!(!r.failed());
    assert!(r.to_tsv().contains("\tskipped (budget)\t"));
}

#[test]
fn reports_are_deterministic() {
    let c = parse_config("suite coxeter fourier pgl2 witt\nsamples 20\nconjugates 3\n").unwrap();
    assert_eq!(run_suite(&c).to_tsv(), run_suite(&c).to_tsv());
}

#[test]
fn every_criterion_has_a_check_id() {
    for n in 1..=11u8 {
        assert!(CHECKS.iter().any(|c| c.criterion == Some(n)), "criterion {n}");
    }
    let mut ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
    ids.dedup();
    assert_eq!(ids.len(), CHECKS.len());
}
