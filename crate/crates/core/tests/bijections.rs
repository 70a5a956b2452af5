use std::collections::{BTreeMap, BTreeSet};

use beck_core::bijection::{
    franklin_phi, franklin_phi_inv, franklin_phi_inv_with, franklin_phi_with, psi, psi_inv, zeta, Glaisher,
    ZeroClassBijection, ZetaCase, ZetaVariant,
};
use beck_core::enumeration::{divisible_tuples, enumerate_class, enumerate_fixed_divisible, partitions_of};
use beck_core::identities::d_fiber;
use beck_core::{ClassSpec, Family, Partition, Result};

/// Pairs the k-th smallest member of `O_{0,r}(n)` with the k-th largest
/// member of `D_{0,r}(n)`. Any bijection will do; this one shares nothing
/// with Glaisher's.
struct RankMatch;

impl RankMatch {
    fn sorted(n: u64, r: u64, family: Family) -> Vec<Partition> {
        let mut v: Vec<_> = enumerate_class(n, ClassSpec::exact(family, r, 0).unwrap()).unwrap().collect();
        v.sort();
        if family == Family::D {
            v.reverse();
        }
        v
    }
}

impl ZeroClassBijection for RankMatch {
    fn forward(&self, lambda: &Partition, r: u64) -> Result<Partition> {
        let o = Self::sorted(lambda.size(), r, Family::O);
        let d = Self::sorted(lambda.size(), r, Family::D);
        let i = o.binary_search(lambda).expect("input in O_0");
        Ok(d[i].clone())
    }

    fn inverse(&self, mu: &Partition, r: u64) -> Result<Partition> {
        let o = Self::sorted(mu.size(), r, Family::O);
        let d = Self::sorted(mu.size(), r, Family::D);
        let i = d.iter().position(|p| p == mu).expect("input in D_0");
        Ok(o[i].clone())
    }
}

fn class(n: u64, family: Family, r: u64, j: u64) -> BTreeSet<Partition> {
    enumerate_class(n, ClassSpec::exact(family, r, j).unwrap()).unwrap().collect()
}

#[test]
fn psi_is_a_bijection_onto_d0() {
    for n in 0..=24 {
        for r in 2..=4 {
            let image: BTreeSet<_> = class(n, Family::O, r, 0).iter().map(|l| psi(l, r).unwrap()).collect();
            assert_eq!(image, class(n, Family::D, r, 0), "n={n} r={r}");
            for mu in &image {
                assert_eq!(psi(&psi_inv(mu, r).unwrap(), r).unwrap(), *mu);
            }
        }
    }
}

#[test]
fn phi_is_a_bijection_for_every_j() {
    for n in 0..=22 {
        for r in 2..=4 {
            for j in 0..=3 {
                let source = class(n, Family::O, r, j);
                let image: BTreeSet<_> = source.iter().map(|l| franklin_phi(l, r).unwrap()).collect();
                assert_eq!(image.len(), source.len());
                assert_eq!(image, class(n, Family::D, r, j), "n={n} r={r} j={j}");
            }
        }
    }
}

#[test]
fn phi_on_zero_class_is_psi() {
    for n in 0..=18 {
        for r in 2..=4 {
            for lambda in class(n, Family::O, r, 0) {
                assert_eq!(franklin_phi(&lambda, r).unwrap(), psi(&lambda, r).unwrap());
            }
        }
    }
}

#[test]
fn phi_roundtrips_on_all_partitions() {
    for n in 0..=20 {
        for r in 2..=4 {
            for lambda in partitions_of(n).unwrap() {
                let mu = franklin_phi(&lambda, r).unwrap();
                assert_eq!(mu.size(), n);
                assert_eq!(franklin_phi_inv(&mu, r).unwrap(), lambda);
                let back = franklin_phi(&franklin_phi_inv(&lambda, r).unwrap(), r).unwrap();
                assert_eq!(back, lambda);
            }
        }
    }
}

#[test]
fn alternative_zero_bijection_gives_a_franklin_map() {
    for n in 0..=14 {
        for r in 2..=3 {
            for j in 0..=2 {
                let source = class(n, Family::O, r, j);
                let image: BTreeSet<_> = source.iter().map(|l| franklin_phi_with(&RankMatch, l, r).unwrap()).collect();
                assert_eq!(image, class(n, Family::D, r, j));
                for lambda in &source {
                    let mu = franklin_phi_with(&RankMatch, lambda, r).unwrap();
                    assert_eq!(franklin_phi_inv_with(&RankMatch, &mu, r).unwrap(), *lambda);
                }
            }
        }
    }
}

/// For each `(m, k)` the fiber `O^{m,k}_{j,r}(n)` maps onto `D^{m,k}_{j,r}(n)`
/// and the `ell-bar_t` total over the image equals that over
/// `D_{0,r}(n - r m.k)`, whichever zero-class bijection is used.
#[test]
fn fiber_refinement_is_independent_of_psi() {
    fn check<B: ZeroClassBijection>(zero: &B) {
        for n in 0..=14u64 {
            for r in 2..=3u64 {
                for j in 1..=2usize {
                    for tuple in divisible_tuples(n, r, j).unwrap() {
                        let image: BTreeSet<_> = enumerate_fixed_divisible(n, r, &tuple)
                            .unwrap()
                            .map(|l| franklin_phi_with(zero, &l, r).unwrap())
                            .collect();
                        let fiber: BTreeSet<_> = d_fiber(n, r, &tuple).unwrap().collect();
                        assert_eq!(image, fiber);
                        let rest = n - r * tuple.dot();
                        for t in 1..r {
                            let lhs: u64 = image.iter().map(|mu| mu.stats(r).unwrap().ell_bar_t(t)).sum();
                            let rhs: u64 =
                                class(rest, Family::D, r, 0).iter().map(|mu| mu.stats(r).unwrap().ell_bar_t(t)).sum();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    check(&Glaisher);
    check(&RankMatch);
}

#[test]
fn zeta_preimage_counts() {
    for n in 0..=22 {
        for r in 2..=3 {
            for j in 1..=2u64 {
                let mut hits: BTreeMap<Partition, u64> = BTreeMap::new();
                for tuple in divisible_tuples(n, r, j as usize).unwrap() {
                    let rest = n - r * tuple.dot();
                    for mu in class(rest, Family::O, r, 1) {
                        let out = zeta(&mu, r, &tuple, ZetaVariant::DivisibleParts).unwrap();
                        let landed = out.image.classify(r).unwrap().j_div as u64;
                        match out.case {
                            ZetaCase::CollidesExisting => {
                                assert_eq!(landed, j);
                                let i = out.collided_index.unwrap();
                                assert!(out.image.multiplicity(tuple.m[i] * r) > tuple.k[i]);
                            }
                            ZetaCase::FreshPart => assert_eq!(landed, j + 1),
                        }
                        *hits.entry(out.image).or_default() += 1;
                    }
                }
                for eta in class(n, Family::O, r, j) {
                    let ell0 = eta.stats(r).unwrap().ell_t(0);
                    assert_eq!(hits.remove(&eta).unwrap_or(0), ell0 - j, "{eta}");
                }
                for eta in class(n, Family::O, r, j + 1) {
                    assert_eq!(hits.remove(&eta).unwrap_or(0), j + 1, "{eta}");
                }
                assert!(hits.is_empty(), "images outside O_j and O_(j+1)");
            }
        }
    }
}

#[test]
fn zeta_multiplicity_variant_lands_in_the_right_class() {
    for n in 0..=20 {
        for r in 2..=3 {
            for j in 1..=2u64 {
                for tuple in divisible_tuples(n, r, j as usize).unwrap() {
                    let rest = n - r * tuple.dot();
                    for mu in class(rest, Family::D, r, 1) {
                        let Ok(out) = zeta(&mu, r, &tuple, ZetaVariant::RepeatedMults) else {
                            // the repeated part has multiplicity >= 2r
                            continue;
                        };
                        let landed = out.image.classify(r).unwrap().j_rep as u64;
                        let expected = match out.case {
                            ZetaCase::CollidesExisting => j,
                            ZetaCase::FreshPart => j + 1,
                        };
                        assert_eq!(landed, expected);
                        assert_eq!(out.image.size(), n);
                    }
                }
            }
        }
    }
}

#[test]
fn nonresidual_balance_through_phi() {
    for n in 0..=20 {
        for r in 2..=4 {
            for j in 0..=3 {
                for lambda in class(n, Family::O, r, j) {
                    let mu = franklin_phi(&lambda, r).unwrap();
                    let ell0 = lambda.stats(r).unwrap().ell_t(0);
                    // psi's image has no nonresidual multiplicity, so only the adjoined m^{rk} count
                    assert_eq!(mu.stats(r).unwrap().nonresidual_total(), r * ell0, "{lambda}");
                }
            }
        }
    }
}
