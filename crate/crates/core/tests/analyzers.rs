use proptest::prelude::*;
use scenario_core::analyzers::*;
use scenario_core::counterexamples::*;
use scenario_core::pathplan::{band_shatter_candidates, barriers, PathAlg1, PathAlg2, Scene};
use scenario_core::{Error, ScenarioSystem};
use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};

fn no_empty() -> ShatterOptions {
    ShatterOptions {
        include_empty: false,
        ..ShatterOptions::default()
    }
}

#[test]
fn interval_three_set_is_not_shattered() {
    let z = vec![member(0.3), member(0.6), member(0.9)];
    let opts = ShatterOptions {
        max_len: Some(3),
        ..no_empty()
    };
    let rep = check_shattered(&IntervalSystem, &z, &opts).unwrap();
    assert_eq!(rep.verdict, ShatterVerdict::NotShattered);
    let cx = rep.counterexample.as_ref().unwrap();
    assert_eq!(cx.tuple, vec![member(0.3)]);
    assert_eq!(cx.satisfied, z);
    assert_eq!(cx.sampled, vec![member(0.3)]);
    assert_eq!(rep.tuples_checked, 1);
    assert!(rep.recheck(&IntervalSystem));

    // With the empty tuple enumerated first, it is the earliest failure.
    let rep = check_shattered(&IntervalSystem, &z, &ShatterOptions::default()).unwrap();
    assert!(rep.counterexample.as_ref().unwrap().tuple.is_empty());
    assert!(rep.recheck(&IntervalSystem));
}

#[test]
fn interval_singleton_zero_is_shattered() {
    let opts = ShatterOptions {
        max_len: Some(3),
        ..ShatterOptions::default()
    };
    let rep = check_shattered(&IntervalSystem, &[member(0.0)], &opts).unwrap();
    assert_eq!(rep.verdict, ShatterVerdict::ShatteredUpToL);
    assert_eq!(rep.tuples_checked, 4);
    assert!(rep.recheck(&IntervalSystem));
}

#[test]
fn duplicate_candidates_rejected() {
    let err = check_shattered(
        &IntervalSystem,
        &[member(0.2), member(0.2)],
        &ShatterOptions::default(),
    );
    assert!(matches!(err, Err(Error::DuplicateCandidate { index: 1 })));
}

#[test]
fn budget_overrun_is_explicit() {
    let z: Vec<_> = (1..=6).map(|k| member(k as f64 / 10.0)).collect();
    let opts = ShatterOptions {
        include_empty: false,
        max_len: Some(6),
        budget: 10,
    };
    // A refutation found within the budget is still reported.
    let rep = check_shattered(&IntervalSystem, &z, &opts).unwrap();
    assert_eq!(rep.verdict, ShatterVerdict::NotShattered);

    let zero: Vec<_> = vec![member(0.0)];
    let opts = ShatterOptions {
        include_empty: true,
        max_len: Some(30),
        budget: 5,
    };
    match check_shattered(&IntervalSystem, &zero, &opts) {
        Err(Error::BudgetExceeded {
            required,
            budget,
            checked,
        }) => {
            assert_eq!(required, 31);
            assert_eq!(budget, 5);
            assert_eq!(checked, 5);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

/// Upper convex hull of `I`, `T` and the tips: the shortest path above all
/// of them, computed independently of the visibility graph.
fn hull_oracle(scene: &Scene, thetas: &[f64]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = vec![(-1.0, 0.0), (1.0, 0.0)];
    for &t in thetas {
        pts.push((
            scene.barrier_length * t.cos(),
            scene.barrier_length * t.sin(),
        ));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

#[test]
fn alg1_band_of_three_is_shattered() {
    let z = band_shatter_candidates(3, 0.1).unwrap();
    let sys = PathAlg1::default();
    let rep = check_shattered(&sys, &z, &no_empty()).unwrap();
    assert_eq!(rep.verdict, ShatterVerdict::ShatteredUpToL);
    assert_eq!(rep.tuples_checked, 39);
    let rep = check_shattered(&sys, &z, &ShatterOptions::default()).unwrap();
    assert_eq!(rep.verdict, ShatterVerdict::ShatteredUpToL);
    assert_eq!(rep.tuples_checked, 40);

    // Oracle: for every subset the hull path passes over exactly the sampled
    // tips, and every unsampled band barrier is crossed inside radius L.
    let scene = Scene::default();
    let l = scene.barrier_length;
    for mask in 1u32..8 {
        let sampled: Vec<f64> = (0..3)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| z[j].theta)
            .collect();
        let hull = hull_oracle(&scene, &sampled);
        assert_eq!(hull.len(), sampled.len() + 2);
        for (j, b) in z.iter().enumerate() {
            if mask >> j & 1 == 1 {
                continue;
            }
            let (c, s) = (b.theta.cos(), b.theta.sin());
            let crossing = hull.windows(2).find_map(|w| {
                let (p, q) = (w[0], w[1]);
                // Intersect segment p->q with the ray r (c, s), r > 0.
                let d = (q.0 - p.0, q.1 - p.1);
                let den = d.0 * s - d.1 * c;
                if den.abs() < 1e-15 {
                    return None;
                }
                let t = (p.1 * c - p.0 * s) / den;
                let r = (p.0 + t * d.0) * c + (p.1 + t * d.1) * s;
                ((0.0..=1.0).contains(&t) && r > 0.0).then_some(r)
            });
            let r = crossing.expect("hull crosses every ray in the upper halfplane");
            assert!(r < l - 1e-6, "unsampled barrier {j} crossed at radius {r}");
        }
    }
}

#[test]
fn dvc_interval_candidates() {
    let sets = vec![
        vec![member(0.0)],
        vec![member(0.0), member(0.5)],
        vec![member(0.2), member(0.4), member(0.8)],
        vec![member(0.0), member(0.3), member(0.7)],
    ];
    let opts = ShatterOptions {
        max_len: Some(3),
        ..ShatterOptions::default()
    };
    let rep = dvc_lower_bound(&IntervalSystem, &sets, &opts).unwrap();
    assert_eq!(rep.lower_bound, 1);
    assert_eq!(rep.witness, Some(vec![member(0.0)]));
    // {U(0), U(0.5)} fails on the empty tuple only.
    let pair = &rep.reports[1];
    assert!(pair.counterexample.as_ref().unwrap().tuple.is_empty());
    let strict = check_shattered(
        &IntervalSystem,
        &sets[1],
        &ShatterOptions {
            max_len: Some(3),
            ..no_empty()
        },
    )
    .unwrap();
    assert_eq!(strict.verdict, ShatterVerdict::ShatteredUpToL);

    let rep = dvc_lower_bound(
        &IntervalSystem,
        &sets,
        &ShatterOptions {
            max_len: Some(3),
            ..no_empty()
        },
    )
    .unwrap();
    assert_eq!(rep.lower_bound, 2);
}

#[test]
fn dvc_alg1_band_sizes() {
    let sets: Vec<_> = (2..=5)
        .map(|k| band_shatter_candidates(k, 0.1).unwrap())
        .collect();
    let rep = dvc_lower_bound(&PathAlg1::default(), &sets, &ShatterOptions::default()).unwrap();
    assert_eq!(rep.lower_bound, 5);
    assert!(rep
        .reports
        .iter()
        .all(|r| r.verdict == ShatterVerdict::ShatteredUpToL));
}

#[test]
fn dvc_sum_singletons() {
    // 1 + sum is 1 on the empty tuple, so only {U(1)} is cut out as empty.
    let sets: Vec<Vec<Exclusion>> = (0..5).map(|a| excl(&[a])).collect();
    let rep = dvc_lower_bound(&SumSystem, &sets, &ShatterOptions::default()).unwrap();
    assert_eq!(rep.lower_bound, 1);
    assert_eq!(rep.witness, Some(excl(&[1])));
    let shattered: Vec<usize> = rep
        .reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.verdict == ShatterVerdict::ShatteredUpToL)
        .map(|(k, _)| k)
        .collect();
    assert_eq!(shattered, vec![1]);
}

#[test]
fn min_system_has_no_map_of_capacity_two() {
    let vz = excl(&[0, 1, 2]);
    assert_eq!(
        find_compression_subtuple(&MinSystem, &vz, 2, 1000).unwrap(),
        None
    );
    assert_eq!(
        find_compression_subtuple(&MinSystem, &vz, 3, 1000).unwrap(),
        Some(vec![0, 1, 2])
    );
}

#[test]
fn alg2_compresses_to_binding_barrier() {
    let vz = barriers(&[PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0]).unwrap();
    let sys = PathAlg2::default();
    assert_eq!(
        find_compression_subtuple(&sys, &vz, 1, 1000).unwrap(),
        Some(vec![1])
    );
}

#[test]
fn full_capacity_always_compresses() {
    let vz = excl(&[3, 1, 4, 1, 5]);
    for sys_sub in [
        find_compression_subtuple(&SumSystem, &vz, 5, 1000).unwrap(),
        find_compression_subtuple(&MinSystem, &vz, 7, 1000).unwrap(),
    ] {
        assert!(sys_sub.is_some());
    }
    // The sum needs every positive entry; zero entries may be dropped.
    let vz = excl(&[2, 0, 3]);
    assert_eq!(
        find_compression_subtuple(&SumSystem, &vz, 3, 1000).unwrap(),
        Some(vec![0, 2])
    );
}

#[test]
fn compression_budget_is_explicit() {
    let vz = excl(&[0, 1, 2, 3, 4, 5]);
    assert!(matches!(
        find_compression_subtuple(&MinSystem, &vz, 5, 10),
        Err(Error::BudgetExceeded { checked: 10, .. })
    ));
}

fn subset_sum_oracle(values: &[u64]) -> usize {
    let mut sums = BTreeSet::new();
    for mask in 0u32..(1 << values.len()) {
        let s: u64 = (0..values.len())
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| values[j])
            .sum();
        sums.insert(1 + s);
    }
    sums.len()
}

fn binom_oracle(n: u64, r: u64) -> u128 {
    // Pascal's triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.get(r as usize).copied().unwrap_or(0)
}

#[test]
fn sum_scheme_certificates() {
    let t = excl(&[1, 2, 4, 8]);
    let rep = certify_no_compression_scheme(&SumSystem, &t, 1, false).unwrap();
    match rep.mode {
        CompressionMode::SchemeCounting {
            achieved_decisions,
            compressed_bound,
            impossible,
            k,
            ..
        } => {
            assert_eq!(k, 4);
            assert_eq!(
                achieved_decisions as usize,
                subset_sum_oracle(&[1, 2, 4, 8])
            );
            assert_eq!(achieved_decisions, 16);
            assert_eq!(compressed_bound, 5);
            assert!(impossible);
        }
        _ => panic!("wrong mode"),
    }
    assert!(!rep.compressible());

    let ten: Vec<u64> = (0..10).map(|j| 1u64 << j).collect();
    let rep = certify_no_compression_scheme(&SumSystem, &excl(&ten), 2, false).unwrap();
    let CompressionMode::SchemeCounting {
        achieved_decisions,
        compressed_bound,
        impossible,
        ..
    } = rep.mode
    else {
        panic!("wrong mode")
    };
    assert_eq!(achieved_decisions, 1024);
    assert_eq!(compressed_bound, 56);
    assert!(impossible);
}

#[test]
fn min_scheme_counting_is_inconclusive() {
    let t = excl(&[0, 1, 2, 3]);
    let rep = certify_no_compression_scheme(&MinSystem, &t, 3, false).unwrap();
    let CompressionMode::SchemeCounting {
        achieved_decisions,
        compressed_bound,
        impossible,
        ..
    } = rep.mode
    else {
        panic!("wrong mode")
    };
    // Minimum excluded value over subsets of {0,1,2,3}: 0..=4.
    assert_eq!(achieved_decisions, 5);
    assert_eq!(compressed_bound, 15);
    assert!(!impossible);

    let perm = certify_no_compression_scheme(&MinSystem, &t, 3, true).unwrap();
    let CompressionMode::SchemeCounting {
        achieved_decisions: d2,
        ..
    } = perm.mode
    else {
        panic!("wrong mode")
    };
    assert_eq!(d2, 5);
}

#[test]
fn sum_counting_exact_for_powers_of_two() {
    for k in 2..=12u32 {
        let values: Vec<u64> = (0..k).map(|j| 1u64 << j).collect();
        for d in [1u64, 2] {
            let rep = certify_no_compression_scheme(&SumSystem, &excl(&values), d as usize, false)
                .unwrap();
            let CompressionMode::SchemeCounting {
                achieved_decisions,
                compressed_bound,
                impossible,
                ..
            } = rep.mode
            else {
                panic!("wrong mode")
            };
            assert_eq!(achieved_decisions, 1u128 << k);
            let b: u128 = (0..=d).map(|r| binom_oracle(u64::from(k), r)).sum();
            assert_eq!(compressed_bound, b);
            assert_eq!(impossible, (1u128 << k) > b);
        }
    }
}

#[test]
fn range_witness_small_and_k8() {
    let r = verify_range_shattering_witness(3).unwrap();
    assert!(r.passed());
    assert_eq!(r.subsets_realized, 8);
    assert_eq!(r.membership_tests, 24);
    let r = verify_range_shattering_witness(8).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
    assert_eq!(r.subsets_realized, 256);
    assert_eq!(r.vc_lower_bound, 8);
    assert!(r.max_decision_error <= 1e-9);
}

#[test]
fn sum_range_never_shatters_pairs() {
    // Decisions of the sum system are natural numbers >= 1; each excludes at
    // most one constraint, so the pattern "both violated" is never realized.
    let decisions: Vec<u64> = (1..200).collect();
    for a in 0..20u64 {
        for b in a + 1..20 {
            let z = excl(&[a, b]);
            assert!(!range_shattered_by(&SumSystem, &decisions, &z).unwrap());
            let pats = realized_patterns(&SumSystem, &decisions, &z).unwrap();
            assert!(!pats.contains(&0));
        }
    }
    assert!(range_shattered_by(&SumSystem, &decisions, &excl(&[5])).unwrap());
}

#[test]
fn adversarial_pair_gives_half() {
    let z = band_shatter_candidates(2, 0.1).unwrap();
    let rep = adversarial_pac_experiment(&PathAlg1::default(), &z, 1, 0.25, 50, 3).unwrap();
    assert!(rep.risks.iter().all(|&r| r == 0.5));
    assert_eq!(rep.q_hat, 1.0);
    assert!(rep.all_at_least_half);
    assert_eq!(rep.pac_curve().rows.len(), 1);
}

#[test]
fn adversarial_precondition() {
    let err = adversarial_pac_experiment(&IntervalSystem, &[member(0.0)], 1, 0.25, 10, 0);
    assert!(matches!(err, Err(Error::InvalidArgument(_))));
}

#[test]
fn adversarial_alg1_ten_band() {
    let z = band_shatter_candidates(10, 0.1).unwrap();
    let rep = adversarial_pac_experiment(&PathAlg1::default(), &z, 5, 0.25, 200, 11).unwrap();
    assert!(rep.all_at_least_half);
    assert_eq!(rep.q_hat, 1.0);
    // Oracle: shattering makes risk = (|Z'| - #distinct sampled) / |Z'|.
    let again = adversarial_pac_experiment(&PathAlg1::default(), &z, 5, 0.25, 200, 11).unwrap();
    assert_eq!(rep, again);
}

#[test]
fn vc_bound_values() {
    let oracle = |eps: f64, beta: f64, d: f64| {
        ((4.0 / eps) * (d * (12.0 / eps).ln() + (2.0 / beta).ln())).ceil() as u64
    };
    for d in 1..=4u64 {
        let q = BoundQuery {
            epsilon: 0.1,
            beta: 0.05,
            d,
            n: None,
        };
        assert_eq!(vc_sample_bound(&q).unwrap(), oracle(0.1, 0.05, d as f64));
    }
    assert_eq!(
        vc_sample_bound(&BoundQuery {
            epsilon: 0.1,
            beta: 0.05,
            d: 1,
            n: None
        })
        .unwrap(),
        340
    );
    assert_eq!(
        vc_sample_bound(&BoundQuery {
            epsilon: 0.1,
            beta: 0.05,
            d: 2,
            n: None
        })
        .unwrap(),
        531
    );
    assert!(vc_sample_bound(&BoundQuery {
        epsilon: 1.5,
        beta: 0.05,
        d: 2,
        n: None
    })
    .is_err());
}

#[test]
fn compression_bound_values() {
    let q = BoundQuery {
        epsilon: 0.1,
        beta: 0.01,
        d: 1,
        n: Some(100),
    };
    let CompressionBound::Beta(b) = compression_bound(&q).unwrap() else {
        panic!()
    };
    let oracle: f64 = (0..99).fold(100.0, |acc, _| acc * 0.9);
    assert!((b - oracle).abs() <= 1e-12 * oracle);
    assert!((b - 2.951_266_543_065_282_5e-3).abs() < 1e-15);

    let direct = |n: u64| n as f64 * 0.9f64.powi(n as i32 - 1);
    let oracle_n = (2..).find(|&n| direct(n) <= 0.01).unwrap();
    let CompressionBound::MinimalN(n) = compression_bound(&BoundQuery { n: None, ..q }).unwrap()
    else {
        panic!()
    };
    assert_eq!(n, oracle_n);
    assert_eq!(n, 88);
    assert!(compression_bound_beta(1, 1, 0.1).is_err());
}

#[test]
fn compression_bound_decreasing_past_turning_point() {
    for d in 0..4u64 {
        let eps = 0.1;
        let start = (d as f64 / eps).floor() as u64 + 1;
        let mut prev = compression_bound_beta(start.max(d + 1), d, eps).unwrap();
        for n in start.max(d + 1) + 1..start + 300 {
            let b = compression_bound_beta(n, d, eps).unwrap();
            assert!(b < prev, "d={d} n={n}");
            prev = b;
        }
    }
}

#[test]
fn min_n_matches_scan_for_several_queries() {
    for (d, eps, beta) in [
        (0u64, 0.2f64, 0.05),
        (1, 0.05, 0.001),
        (2, 0.1, 0.01),
        (3, 0.3, 0.2),
    ] {
        let oracle = (d + 1..)
            .find(|&n| {
                let c: f64 = (0..d).map(|j| (n - j) as f64 / (j + 1) as f64).product();
                c * (1.0 - eps).powi((n - d) as i32) <= beta
            })
            .unwrap();
        assert_eq!(compression_min_n(d, eps, beta).unwrap(), oracle, "d={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negative_certificates_survive_serialization(points in prop::collection::btree_set(0u32..20, 1..4)) {
        let z: Vec<Membership> = points.iter().map(|&p| member(f64::from(p) / 20.0)).collect();
        let rep = check_shattered(&IntervalSystem, &z, &ShatterOptions { max_len: Some(3), ..ShatterOptions::default() }).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        let back: ShatterCheckReport<Membership> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &rep);
        prop_assert!(back.recheck(&IntervalSystem));
    }

    #[test]
    fn subtuples_are_legal(values in prop::collection::vec(0u64..6, 0..7), d in 0usize..4) {
        let vz = excl(&values);
        for sub in [
            find_compression_subtuple(&MinSystem, &vz, d, 1 << 20).unwrap(),
            find_compression_subtuple(&SumSystem, &vz, d, 1 << 20).unwrap(),
        ].into_iter().flatten() {
            prop_assert!(sub.len() <= d);
            prop_assert!(sub.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(sub.iter().all(|&i| i < vz.len()));
        }
        if let Some(sub) = find_compression_subtuple(&MinSystem, &vz, d, 1 << 20).unwrap() {
            let picked: Vec<Exclusion> = sub.iter().map(|&i| vz[i]).collect();
            prop_assert_eq!(MinSystem.decide(&picked), MinSystem.decide(&vz));
        }
    }
}
