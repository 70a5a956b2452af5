mod common;

use std::collections::BTreeSet;

use beck_core::enumeration::{
    count_class, count_partitions, divisible_tuples, enumerate_class, enumerate_class_filtered,
    enumerate_fixed_divisible, partitions_of,
};
use beck_core::{ClassSpec, DivisibleTuple, Family, Mode, Partition};

use common::*;

#[test]
fn stream_matches_brute_force_in_order() {
    for n in 0..=16 {
        let ours: Vec<Partition> = partitions_of(n).unwrap().collect();
        let theirs: Vec<Partition> = brute_partitions(n).iter().map(|p| to_partition(p)).collect();
        assert_eq!(ours, theirs, "n={n}");
    }
}

#[test]
fn stream_lengths_follow_pentagonal_recurrence() {
    let p = pentagonal_counts(45);
    for n in 0..=45u64 {
        assert_eq!(partitions_of(n).unwrap().count() as u128, p[n as usize], "n={n}");
    }
}

#[test]
fn lending_stream_agrees_with_iterator() {
    let mut lending = partitions_of(12).unwrap();
    let mut seen = Vec::new();
    while let Some(p) = lending.advance() {
        seen.push(p.clone());
    }
    assert_eq!(seen, partitions_of(12).unwrap().collect::<Vec<_>>());
}

#[test]
fn streams_are_deterministic() {
    let spec = ClassSpec::exact(Family::D, 3, 1).unwrap();
    let a: Vec<_> = enumerate_class(22, spec).unwrap().collect();
    let b: Vec<_> = enumerate_class(22, spec).unwrap().collect();
    assert_eq!(a, b);
}

#[test]
fn direct_generation_equals_filter() {
    for n in 0..=18 {
        for r in 2..=4 {
            for j in 0..=3 {
                for family in [Family::O, Family::D] {
                    for mode in [Mode::Exact, Mode::AtMost] {
                        let spec = ClassSpec::new(family, r, j, mode).unwrap();
                        let direct: Vec<_> = enumerate_class(n, spec).unwrap().collect();
                        let filtered: Vec<_> = enumerate_class_filtered(n, spec).unwrap().collect();
                        assert_eq!(direct, filtered, "{spec:?} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn class_counts_partition_p_n() {
    let p = pentagonal_counts(40);
    for n in [0u64, 1, 7, 19, 33, 40] {
        for r in 2..=5 {
            for family in [Family::O, Family::D] {
                let total: u64 =
                    (0..=n).map(|j| count_class(n, ClassSpec::exact(family, r, j).unwrap()).unwrap()).sum();
                assert_eq!(total as u128, p[n as usize]);
                for j in 0..=3 {
                    let at_most = count_class(n, ClassSpec::at_most(family, r, j).unwrap()).unwrap();
                    let summed: u64 =
                        (0..=j).map(|i| count_class(n, ClassSpec::exact(family, r, i).unwrap()).unwrap()).sum();
                    assert_eq!(at_most, summed);
                }
            }
        }
    }
}

#[test]
fn counts_match_enumeration() {
    for n in 0..=24 {
        for r in 2..=5 {
            for j in 0..=3 {
                for family in [Family::O, Family::D] {
                    let spec = ClassSpec::exact(family, r, j).unwrap();
                    assert_eq!(
                        count_class(n, spec).unwrap(),
                        enumerate_class(n, spec).unwrap().count() as u64,
                        "{spec:?} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn knapsack_partition_count_matches_pentagonal_to_bound() {
    let p = pentagonal_counts(120);
    for n in 0..=120u64 {
        assert_eq!(count_partitions(n).unwrap() as u128, p[n as usize], "n={n}");
    }
}

#[test]
fn franklin_counts_agree_with_flat_oracle() {
    for n in 0..=20 {
        for r in 2..=4 {
            for j in 0..=3 {
                let o = class_sum(n, |p| in_o(p, r, j), |_| 1);
                let d = class_sum(n, |p| in_d(p, r, j), |_| 1);
                assert_eq!(o, d);
                let ours = count_class(n, ClassSpec::exact(Family::O, r, j).unwrap()).unwrap();
                assert_eq!(ours as i64, o);
            }
        }
    }
}

#[test]
fn divisible_tuples_match_brute_force() {
    for n in 0..=24u64 {
        for r in 2..=3u64 {
            for j in 0..=3usize {
                let ours: BTreeSet<DivisibleTuple> = divisible_tuples(n, r, j).unwrap().into_iter().collect();
                let mut theirs = BTreeSet::new();
                // every strictly increasing m with positive k and r m.k <= n
                let budget = n / r;
                fn go(
                    j: usize,
                    start: u64,
                    budget: u64,
                    acc: &mut Vec<(u64, u64)>,
                    out: &mut BTreeSet<DivisibleTuple>,
                ) {
                    if acc.len() == j {
                        let (m, k) = acc.iter().copied().unzip();
                        out.insert(DivisibleTuple::new(m, k).unwrap());
                        return;
                    }
                    for m in start..=budget {
                        for k in 1..=budget {
                            if m * k > budget {
                                break;
                            }
                            acc.push((m, k));
                            go(j, m + 1, budget - m * k, acc, out);
                            acc.pop();
                        }
                    }
                }
                go(j, 1, budget, &mut Vec::new(), &mut theirs);
                assert_eq!(ours, theirs, "n={n} r={r} j={j}");
            }
        }
    }
}

#[test]
fn fixed_divisible_fibers_cover_class() {
    for n in 0..=22 {
        for r in 2..=3 {
            for j in 0..=2usize {
                let mut union = Vec::new();
                for tuple in divisible_tuples(n, r, j).unwrap() {
                    for lambda in enumerate_fixed_divisible(n, r, &tuple).unwrap() {
                        assert_eq!(lambda.size(), n);
                        union.push(lambda);
                    }
                }
                let before = union.len();
                union.sort();
                union.dedup();
                assert_eq!(before, union.len(), "fibers overlap");
                let mut class: Vec<_> =
                    enumerate_class(n, ClassSpec::exact(Family::O, r, j as u64).unwrap()).unwrap().collect();
                class.sort();
                assert_eq!(union, class, "n={n} r={r} j={j}");
            }
        }
    }
}

#[test]
fn bound_is_enforced() {
    let spec = ClassSpec::exact(Family::O, 2, 0).unwrap();
    assert!(enumerate_class(121, spec).is_err());
    assert!(count_class(121, spec).is_err());
    assert!(partitions_of(121).is_err());
    assert!(ClassSpec::exact(Family::O, 1, 0).is_err());
}
