use beck_core::identities::{class_totals, ClassTotals};
use beck_core::qseries::{gf_class, gf_deriv, gf_e, gf_t, lambert_divisor, lambert_residue, DerivKind, Series};
use beck_core::{ClassSpec, Family};
use proptest::prelude::*;

const N: usize = 18;
const J: usize = 4;

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(-5i128..6, (N + 1) * (J + 1)).prop_map(|cs| {
        let mut s = Series::zero(N, J).unwrap();
        for (i, c) in cs.into_iter().enumerate() {
            s.set(i / (J + 1), i % (J + 1), c);
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_a_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.mul(&Series::one(N, J).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(a.sub(&a).unwrap(), Series::zero(N, J).unwrap());
        prop_assert_eq!(a.scalar(3), a.add(&a).unwrap().add(&a).unwrap());
    }

    #[test]
    fn in_place_factors_match_products(a in series(), k in 1usize..7) {
        let mut fast = a.clone();
        fast.mul_geom(k);
        let geom = beck_core::qseries::geom_factor(k, N, J).unwrap();
        prop_assert_eq!(&fast, &a.mul(&geom).unwrap());
        fast.mul_one_minus(k);
        prop_assert_eq!(&fast, &a);

        let mut fast = a.clone();
        fast.mul_w_factor(k);
        let wf = beck_core::qseries::w_factor(k, N, J).unwrap();
        prop_assert_eq!(fast, a.mul(&wf).unwrap());
    }
}

#[test]
fn lambert_identity_both_orders() {
    for r in 2..=5 {
        for t in 1..r {
            assert_eq!(lambert_residue(r, t, 40, 1).unwrap(), lambert_divisor(r, t, 40, 1).unwrap());
        }
    }
}

fn totals(n: u64, family: Family, r: u64, j: u64) -> ClassTotals {
    class_totals(n, ClassSpec::exact(family, r, j).unwrap()).unwrap()
}

#[test]
fn series_witness_enumeration() {
    let (n_max, j_max) = (16usize, 3usize);
    for r in 2..=4u64 {
        let o_class = gf_class(Family::O, r, n_max, j_max).unwrap();
        let d_class = gf_class(Family::D, r, n_max, j_max).unwrap();
        let o_r0 = gf_deriv(DerivKind::OR0, r, None, n_max, j_max).unwrap();
        let dbar = gf_deriv(DerivKind::DBar, r, None, n_max, j_max).unwrap();
        let oprime = gf_deriv(DerivKind::OPrime, r, None, n_max, j_max).unwrap();
        let dprime = gf_deriv(DerivKind::DPrime, r, None, n_max, j_max).unwrap();
        let t_series = gf_t(r, n_max, j_max).unwrap();
        for n in 0..=n_max {
            for j in 0..=j_max {
                let (o, d) = (totals(n as u64, Family::O, r, j as u64), totals(n as u64, Family::D, r, j as u64));
                let d_next = totals(n as u64, Family::D, r, j as u64 + 1);
                assert_eq!(o_class.get(n, j), o.count as i128);
                assert_eq!(d_class.get(n, j), d.count as i128);
                assert_eq!(o_r0.get(n, j), o.ell_t(0) as i128);
                assert_eq!(dbar.get(n, j), d.nonresidual as i128);
                assert_eq!(oprime.get(n, j), o.ell_bar as i128);
                assert_eq!(dprime.get(n, j), d.ell_bar as i128);
                assert_eq!(t_series.get(n, j), d_next.t_window as i128);
                for t in 1..r {
                    let ort = gf_deriv(DerivKind::ORt, r, Some(t), n_max, j_max).unwrap();
                    let drt = gf_deriv(DerivKind::DRt, r, Some(t), n_max, j_max).unwrap();
                    assert_eq!(ort.get(n, j), o.ell_t(t) as i128);
                    assert_eq!(drt.get(n, j), d.ell_bar_t(t) as i128);
                }
            }
        }
    }
}

#[test]
fn series_relations() {
    let (n_max, j_max) = (40usize, 6usize);
    for r in 2..=5u64 {
        let o_class = gf_class(Family::O, r, n_max, j_max).unwrap();
        assert_eq!(o_class, gf_class(Family::D, r, n_max, j_max).unwrap());

        let o_r0 = gf_deriv(DerivKind::OR0, r, None, n_max, j_max).unwrap();
        let dbar = gf_deriv(DerivKind::DBar, r, None, n_max, j_max).unwrap();
        assert_eq!(dbar, o_r0.scalar(r as i128));

        let e = gf_e(r, 1, n_max, j_max).unwrap();
        for t in 1..r {
            assert_eq!(gf_e(r, t, n_max, j_max).unwrap(), e);
            let ort = gf_deriv(DerivKind::ORt, r, Some(t), n_max, j_max).unwrap();
            let drt = gf_deriv(DerivKind::DRt, r, Some(t), n_max, j_max).unwrap();
            assert_eq!(ort.sub(&o_r0).unwrap().sub(&drt).unwrap(), e);
        }
        for n in 0..=n_max {
            for j in 0..j_max {
                let relaxed = (j as i128 + 1) * o_class.get(n, j + 1) - j as i128 * o_class.get(n, j);
                assert_eq!(e.get(n, j), relaxed);
            }
        }

        // (1 - w) gf_T has coefficients b'_{j,r}(n)
        let b_prime = gf_deriv(DerivKind::DPrime, r, None, n_max, j_max)
            .unwrap()
            .sub(&gf_deriv(DerivKind::OPrime, r, None, n_max, j_max).unwrap())
            .unwrap();
        assert_eq!(gf_t(r, n_max, j_max).unwrap().mul_one_minus_w(), b_prime);
    }
}
