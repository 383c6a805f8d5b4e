use proptest::prelude::*;

use saturate::construct::{Algorithm, Code, GreedyConfig, Schedule, StepRule};
use saturate::io::{format_greedy_config, format_matrix, parse_greedy_config, parse_matrix};
use saturate::report::{merge_best_known, CodeRecord, Registry};
use saturate::{Column, FieldSpec};

fn algorithm() -> impl Strategy<Value = Algorithm> {
    prop::sample::select(Algorithm::ALL.to_vec())
}

/// Records whose `d` and flag are a function of the run and length, so any
/// mix of them merges without conflicts.
fn record() -> impl Strategy<Value = CodeRecord> {
    (
        prop::sample::select(vec![7u64, 11, 13, 16]),
        4usize..=5,
        5usize..30,
        algorithm(),
        prop::option::of(0u64..4),
    )
        .prop_map(|(q, r, n, algorithm, seed)| CodeRecord {
            q,
            r,
            radius: 3,
            n,
            d: (n % 3 != 0).then_some(5 - (n % 2) as u32),
            algorithm,
            seed,
            polynomial: (q == 16).then(|| "1 0 0 1 1".to_string()),
            verified: n % 4 != 1,
        })
}

fn records() -> impl Strategy<Value = Vec<CodeRecord>> {
    prop::collection::vec(record(), 0..24)
}

fn union(a: &Registry, b: &Registry) -> Registry {
    let mut out = a.clone();
    out.merge_all(b).unwrap();
    out
}

proptest! {
    #[test]
    fn merge_is_commutative(a in records(), b in records()) {
        let ab: Vec<_> = a.iter().chain(&b).cloned().collect();
        let ba: Vec<_> = b.iter().chain(&a).cloned().collect();
        prop_assert_eq!(merge_best_known(&ab).unwrap(), merge_best_known(&ba).unwrap());
    }

    #[test]
    fn merge_is_associative(a in records(), b in records(), c in records()) {
        let (ra, rb, rc) = (
            merge_best_known(&a).unwrap(),
            merge_best_known(&b).unwrap(),
            merge_best_known(&c).unwrap(),
        );
        prop_assert_eq!(union(&union(&ra, &rb), &rc), union(&ra, &union(&rb, &rc)));
    }

    #[test]
    fn merge_is_idempotent(a in records()) {
        let once = merge_best_known(&a).unwrap();
        prop_assert_eq!(union(&once, &once), once);
    }

    #[test]
    fn minima_are_minimal(a in records()) {
        let reg = merge_best_known(&a).unwrap();
        for rec in &a {
            let best = reg.best(rec.q, rec.r, 3).unwrap();
            prop_assert!(best.n <= rec.n);
            if let Some(d) = rec.d {
                prop_assert!(reg.best_with_distance(rec.q, rec.r, 3, d).unwrap().n <= rec.n);
            }
            prop_assert!(reg.best_by_algorithm(rec.q, rec.r, 3, rec.algorithm).unwrap().n <= rec.n);
        }
    }

    #[test]
    fn registry_csv_round_trip(a in records()) {
        let reg = merge_best_known(&a).unwrap();
        let text = reg.to_csv();
        let back = Registry::from_csv(&text).unwrap();
        prop_assert_eq!(back.journal(), reg.journal());
        prop_assert_eq!(back.to_csv(), text);
        prop_assert_eq!(back.minima_csv(), reg.minima_csv());
    }

    #[test]
    fn matrix_file_round_trip(
        q in prop::sample::select(vec![3u64, 4, 7, 9, 13]),
        r in 3usize..=5,
        raw in prop::collection::vec(prop::collection::vec(0u32..1000, 5), 1..12),
        seed in prop::option::of(any::<u64>()),
        d in prop::option::of(3u32..6),
    ) {
        let field = FieldSpec::from_order(q, None).unwrap();
        let mut columns: Vec<Column> = Vec::new();
        for v in raw {
            let v: Vec<u32> = v[..r].iter().map(|x| x % q as u32).collect();
            let Some(k) = v.iter().position(|&x| x != 0) else { continue };
            // scale so the leading entry is 1
            let lead = field.element(v[k]).unwrap();
            let inv = field.inv(lead).unwrap();
            let v: Vec<u32> = v
                .iter()
                .map(|&x| field.mul(field.element(x).unwrap(), inv).label())
                .collect();
            let c = Column::new(v, &field).unwrap();
            if !columns.contains(&c) {
                columns.push(c);
            }
        }
        prop_assume!(!columns.is_empty());
        let code = Code { field, r, radius: 3, columns, algorithm: Algorithm::RandGreedy, seed, d };
        let text = format_matrix(&code);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back.columns, &code.columns);
        prop_assert_eq!(&back.field, &code.field);
        prop_assert_eq!((back.r, back.radius, back.d, back.seed), (r, 3, d, seed));
        prop_assert_eq!(back.algorithm, Algorithm::RandGreedy);
        prop_assert_eq!(format_matrix(&back), text);
    }

    #[test]
    fn greedy_config_round_trip(
        seed in any::<u64>(),
        attempts in 1usize..500,
        pool in 1usize..200,
        steps in prop::collection::vec(prop::option::of(1usize..64), 0..6),
        every in prop::option::of(1usize..9),
        below in prop::option::of(0u64..10_000),
        budget in prop::option::of(1u64..1 << 30),
        target in prop::option::of(4usize..40),
    ) {
        let cfg = GreedyConfig {
            schedule: Schedule {
                steps: steps
                    .into_iter()
                    .map(|s| s.map_or(StepRule::FullScan, StepRule::Random))
                    .collect(),
                pool,
                full_scan_every: every,
                full_scan_below: below,
                full_scan_budget: budget,
            },
            start_matrix: Vec::new(),
            seed,
            attempts,
            target_length: target,
        };
        let field = FieldSpec::from_order(7, None).unwrap();
        let text = format_greedy_config(&cfg);
        prop_assert_eq!(parse_greedy_config(&text, &field, 4, None).unwrap(), cfg);
    }
}
