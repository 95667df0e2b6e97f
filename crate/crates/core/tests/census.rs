use arrowing::critical::{verify_observations, HookType};
use arrowing::SearchConfig;

#[test]
fn census_matches_the_taxonomy() {
    use HookType::*;
    let expected: [((usize, usize), &[HookType]); 5] = [
        ((4, 4), &[T1a, T1b]),
        ((4, 5), &[T1]),
        ((5, 5), &[T1a, T1b, T2a, T2b]),
        ((4, 6), &[T1]),
        ((5, 6), &[T1, T2, T3]),
    ];
    for ((k, l), types) in expected {
        let report = verify_observations(k, l, &SearchConfig::default()).unwrap();
        for line in report.lines() {
            println!("{line}");
        }
        assert!(report.passed(), "({k}, {l})");
        assert_eq!(report.by_type.keys().copied().collect::<Vec<_>>(), types, "({k}, {l})");
        assert_eq!(report.by_type.values().sum::<u64>(), report.total);
    }
}
