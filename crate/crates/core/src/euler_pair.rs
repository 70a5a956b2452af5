//! Euler pairs of order `r` and their tilde classes.
//!
//! `S_1` is held as an explicit set of positive integers up to a bound `N`;
//! every check is made on that window only.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{check_bound, count_with_rule, Constrained, Family, Mode, PartRule, DEFAULT_MAX_N};
use crate::error::{check_modulus, Error, Result};
use crate::identities::{cumulative, relaxed_difference, totals_with_rule, ClassTotals, TheoremId, VerificationRecord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerPair {
    pub r: u64,
    pub bound: u64,
    pub s1: BTreeSet<u64>,
    pub s2: BTreeSet<u64>,
    pub subbarao_ok: bool,
    #[serde(skip)]
    in_s1: Vec<bool>,
    #[serde(skip)]
    in_s2: Vec<bool>,
    #[serde(skip)]
    in_rs1: Vec<bool>,
}

impl EulerPair {
    /// Builds the pair on the window `1..=bound`. Without an override `S_2` is
    /// `S_1 \ r S_1`; with one, the Subbarao condition is evaluated against it.
    pub fn new<I, J>(r: u64, s1: I, bound: u64, s2_override: Option<J>) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
        J: IntoIterator<Item = u64>,
    {
        check_modulus(r)?;
        let s1 = validated(s1, bound, "S1")?;
        let derived: BTreeSet<u64> = s1.iter().copied().filter(|&s| !(s % r == 0 && s1.contains(&(s / r)))).collect();
        let closed = s1.iter().all(|&s| s.checked_mul(r).is_none_or(|rs| rs > bound || s1.contains(&rs)));
        let s2 = match s2_override {
            Some(s2) => validated(s2, bound, "S2")?,
            None => derived.clone(),
        };
        let subbarao_ok = closed && s2 == derived;

        let len = bound as usize + 1;
        let mut in_s1 = vec![false; len];
        let mut in_s2 = vec![false; len];
        let mut in_rs1 = vec![false; len];
        for &s in &s1 {
            in_s1[s as usize] = true;
            if let Some(rs) = s.checked_mul(r).filter(|&rs| rs <= bound) {
                in_rs1[rs as usize] = true;
            }
        }
        for &s in &s2 {
            in_s2[s as usize] = true;
        }
        Ok(Self { r, bound, s1, s2, subbarao_ok, in_s1, in_s2, in_rs1 })
    }

    /// `S_1 = {1, ..., N}`; `S_2` is the numbers not divisible by `r`.
    pub fn all_positive(r: u64, bound: u64) -> Result<Self> {
        Self::new(r, 1..=bound, bound, None::<Vec<u64>>)
    }

    /// `S_1 = d N` on the window.
    pub fn multiples_of(r: u64, d: u64, bound: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidEulerPair("d must be positive".into()));
        }
        Self::new(r, (1..=bound / d).map(|i| i * d), bound, None::<Vec<u64>>)
    }

    /// `S_1 = {start, start + step, ...}` on the window.
    pub fn arithmetic(r: u64, start: u64, step: u64, bound: u64) -> Result<Self> {
        if start == 0 || step == 0 {
            return Err(Error::InvalidEulerPair("progression needs positive start and step".into()));
        }
        let members = (0..).map(move |i| start + i * step).take_while(move |&s| s <= bound);
        Self::new(r, members, bound, None::<Vec<u64>>)
    }

    fn check_n(&self, n: u64) -> Result<()> {
        check_bound(n, self.bound.min(DEFAULT_MAX_N))
    }

    pub fn rule(&self, family: Family) -> TildeRule<'_> {
        TildeRule { pair: self, family }
    }

    /// Members of `O~_{j,r}(n)` or `D~_{j,r}(n)` by constrained generation.
    pub fn tilde_class(&self, n: u64, j: u64, family: Family, mode: Mode) -> Result<Constrained<TildeRule<'_>>> {
        self.check_n(n)?;
        Ok(Constrained::new(self.rule(family), n, j, mode))
    }

    pub fn tilde_count(&self, n: u64, j: u64, family: Family, mode: Mode) -> Result<u64> {
        Ok(self.tilde_class(n, j, family, mode)?.count() as u64)
    }

    /// Same count by a knapsack over the allowed part values.
    pub fn tilde_count_dp(&self, n: u64, j: u64, family: Family, mode: Mode) -> Result<u64> {
        self.check_n(n)?;
        Ok(count_with_rule(&self.rule(family), n, j, mode))
    }

    fn totals(&self, n: u64, j: u64, family: Family) -> ClassTotals {
        totals_with_rule(self.r, self.rule(family), n, j, Mode::Exact)
    }
}

fn validated<I: IntoIterator<Item = u64>>(items: I, bound: u64, name: &str) -> Result<BTreeSet<u64>> {
    let set: BTreeSet<u64> = items.into_iter().collect();
    if set.contains(&0) {
        return Err(Error::InvalidEulerPair(format!("{name} members must be positive")));
    }
    if let Some(&big) = set.iter().find(|&&s| s > bound) {
        return Err(Error::InvalidEulerPair(format!("{name} member {big} exceeds the bound {bound}")));
    }
    Ok(set)
}

/// Part rule for a tilde class. For `O~`, parts come from `r S_1` or `S_2`
/// and a part of `r S_1` is special (also when it lies in `S_2`); for `D~`,
/// parts come from `S_1` and a part is special when repeated at least `r`
/// times.
#[derive(Debug, Clone, Copy)]
pub struct TildeRule<'a> {
    pair: &'a EulerPair,
    family: Family,
}

impl PartRule for TildeRule<'_> {
    fn allows(&self, part: u64) -> bool {
        let p = self.pair;
        let i = part as usize;
        i < p.in_s1.len()
            && match self.family {
                Family::O => p.in_rs1[i] || p.in_s2[i],
                Family::D => p.in_s1[i],
            }
    }

    fn is_special(&self, part: u64, mult: u64) -> bool {
        match self.family {
            Family::O => self.pair.in_rs1[part as usize],
            Family::D => mult >= self.pair.r,
        }
    }
}

/// The four tilde identities, numbered as in the theorem statement.
pub fn tilde_theorem(item: u8) -> Result<TheoremId> {
    match item {
        1 => Ok(TheoremId::EulerCumulative),
        2 => Ok(TheoremId::EulerMain),
        3 => Ok(TheoremId::EulerDistinctCumulative),
        4 => Ok(TheoremId::EulerDistinctParts),
        _ => Err(Error::InvalidEulerPair(format!("item must be 1..=4, got {item}"))),
    }
}

struct TildeTable {
    n: u64,
    o: Vec<ClassTotals>,
    d: Vec<ClassTotals>,
}

/// Checks one item of the tilde theorem for every `n` in `ns` and
/// `0 <= j <= j_max`. Refuses pairs failing the Subbarao condition.
pub fn verify_tilde(
    item: u8,
    pair: &EulerPair,
    ns: RangeInclusive<u64>,
    j_max: u64,
) -> Result<Vec<VerificationRecord>> {
    let theorem = tilde_theorem(item)?;
    if !pair.subbarao_ok {
        return Err(Error::NotEulerPair(format!(
            "S1/S2 fail the Subbarao condition for r={} on 1..={}",
            pair.r, pair.bound
        )));
    }
    for n in ns.clone() {
        pair.check_n(n)?;
    }
    let tables: Vec<TildeTable> = ns
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| TildeTable {
            n,
            o: (0..=j_max + 1).map(|j| pair.totals(n, j, Family::O)).collect(),
            d: (0..=j_max + 1).map(|j| pair.totals(n, j, Family::D)).collect(),
        })
        .collect();

    let r = pair.r;
    let mut out = Vec::new();
    for tab in &tables {
        for j in 0..=j_max {
            let ju = j as usize;
            let params = (tab.n, r, j, None);
            let next = |bins: &[ClassTotals]| (j as i64 + 1) * bins[ju + 1].count;
            let (o_le, d_le) = (cumulative(r, &tab.o[..=ju]), cumulative(r, &tab.d[..=ju]));
            let rec = match theorem {
                TheoremId::EulerCumulative => VerificationRecord::new_quotient(
                    theorem,
                    params,
                    o_le.ell - d_le.ell,
                    r as i64 - 1,
                    vec![("o_side", next(&tab.o)), ("d_side", next(&tab.d))],
                ),
                TheoremId::EulerMain => VerificationRecord::new_quotient(
                    theorem,
                    params,
                    tab.o[ju].ell - tab.d[ju].ell,
                    r as i64 - 1,
                    vec![("o_side", relaxed_difference(&tab.o, j)), ("d_side", relaxed_difference(&tab.d, j))],
                ),
                TheoremId::EulerDistinctCumulative => VerificationRecord::new(
                    theorem,
                    params,
                    d_le.ell_bar - o_le.ell_bar,
                    vec![("t_next", tab.d[ju + 1].t_window)],
                ),
                TheoremId::EulerDistinctParts => VerificationRecord::new(
                    theorem,
                    params,
                    tab.d[ju].ell_bar - tab.o[ju].ell_bar,
                    vec![("t_difference", tab.d[ju + 1].t_window - tab.d[ju].t_window)],
                ),
                _ => unreachable!(),
            };
            out.push(rec);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WindowReport {
    /// `|O~_{j,r}(n)| = |D~_{j,r}(n)|` throughout the searched range. Says
    /// nothing beyond the window.
    Verified { n_max: u64, j_max: u64 },
    /// A size where the two class counts differ.
    Counterexample { n: u64, j: u64, o_count: u64, d_count: u64 },
    /// The pair fails the Subbarao condition but the window shows no
    /// difference in counts.
    Inconclusive { n_max: u64, j_max: u64 },
}

/// Compares `|O~_{j,r}(n)|` and `|D~_{j,r}(n)|` for `n <= n_max`,
/// `j <= j_max`, smallest `n` first.
pub fn search_counterexample(pair: &EulerPair, n_max: u64, j_max: u64) -> Result<WindowReport> {
    pair.check_n(n_max)?;
    for n in 0..=n_max {
        for j in 0..=j_max {
            let o_count = pair.tilde_count_dp(n, j, Family::O, Mode::Exact)?;
            let d_count = pair.tilde_count_dp(n, j, Family::D, Mode::Exact)?;
            if o_count != d_count {
                return Ok(WindowReport::Counterexample { n, j, o_count, d_count });
            }
        }
    }
    Ok(if pair.subbarao_ok {
        WindowReport::Verified { n_max, j_max }
    } else {
        WindowReport::Inconclusive { n_max, j_max }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let euler = EulerPair::all_positive(2, 30).unwrap();
        assert!(euler.subbarao_ok);
        assert!(euler.s2.iter().all(|s| s % 2 == 1));
        assert_eq!(euler.s2.len(), 15);

        let threes = EulerPair::multiples_of(2, 3, 30).unwrap();
        assert!(threes.subbarao_ok);
        assert_eq!(threes.s2.iter().copied().collect::<Vec<_>>(), [3, 9, 15, 21, 27]);

        let broken = EulerPair::new(2, [1], 2, Some([1])).unwrap();
        assert!(!broken.subbarao_ok);

        assert!(EulerPair::new(2, [1, 40], 30, None::<Vec<u64>>).is_err());
        assert!(EulerPair::new(2, [0, 1], 30, None::<Vec<u64>>).is_err());
        assert!(EulerPair::new(1, [1], 30, None::<Vec<u64>>).is_err());
    }

    #[test]
    fn count_examples() {
        let threes = EulerPair::multiples_of(2, 3, 30).unwrap();
        assert_eq!(threes.tilde_count(9, 0, Family::O, Mode::Exact).unwrap(), 2);
        assert_eq!(threes.tilde_count(9, 0, Family::D, Mode::Exact).unwrap(), 2);
        assert_eq!(threes.tilde_count(9, 1, Family::O, Mode::Exact).unwrap(), 1);
        assert_eq!(threes.tilde_count(9, 1, Family::D, Mode::Exact).unwrap(), 1);

        let broken = EulerPair::new(2, [1], 2, Some([1])).unwrap();
        assert_eq!(broken.tilde_count(2, 0, Family::O, Mode::Exact).unwrap(), 1);
        assert_eq!(broken.tilde_count(2, 0, Family::D, Mode::Exact).unwrap(), 0);

        for pair in [threes, broken] {
            for fam in [Family::O, Family::D] {
                assert_eq!(pair.tilde_count(0, 0, fam, Mode::Exact).unwrap(), 1);
                assert_eq!(pair.tilde_count(0, 1, fam, Mode::Exact).unwrap(), 0);
            }
        }
    }

    #[test]
    fn count_rejects_n_past_bound() {
        let pair = EulerPair::all_positive(3, 10).unwrap();
        assert!(pair.tilde_count(11, 0, Family::O, Mode::Exact).is_err());
    }

    #[test]
    fn verify_examples() {
        let euler = EulerPair::all_positive(2, 20).unwrap();
        let recs = verify_tilde(2, &euler, 4..=4, 0).unwrap();
        assert_eq!(recs[0].lhs, 3);
        assert!(recs[0].rhs.iter().all(|v| v.value == 3));

        let threes = EulerPair::multiples_of(2, 3, 30).unwrap();
        let recs = verify_tilde(2, &threes, 9..=9, 0).unwrap();
        assert_eq!(recs[0].lhs, 1);
        assert!(recs[0].rhs.iter().all(|v| v.value == 1));

        for item in 1..=4 {
            for rec in verify_tilde(item, &threes, 0..=0, 2).unwrap() {
                assert_eq!(rec.lhs, 0);
                assert!(rec.ok);
            }
        }
    }

    #[test]
    fn verify_refuses_non_euler_pairs() {
        let broken = EulerPair::new(2, [1], 2, Some([1])).unwrap();
        assert!(matches!(verify_tilde(1, &broken, 0..=2, 0), Err(Error::NotEulerPair(_))));
        assert!(verify_tilde(5, &EulerPair::all_positive(2, 5).unwrap(), 0..=2, 0).is_err());
    }

    #[test]
    fn counterexample_search() {
        let broken = EulerPair::new(2, [1], 2, Some([1])).unwrap();
        assert_eq!(
            search_counterexample(&broken, 2, 0).unwrap(),
            WindowReport::Counterexample { n: 2, j: 0, o_count: 1, d_count: 0 }
        );
        let threes = EulerPair::multiples_of(2, 3, 30).unwrap();
        assert_eq!(search_counterexample(&threes, 30, 2).unwrap(), WindowReport::Verified { n_max: 30, j_max: 2 });
        // 3 is not in S1, yet the window 1..=2 cannot see it
        let hidden = EulerPair::new(2, [1, 2], 3, Some([1, 3])).unwrap();
        assert!(!hidden.subbarao_ok);
        assert_eq!(search_counterexample(&hidden, 2, 0).unwrap(), WindowReport::Inconclusive { n_max: 2, j_max: 0 });
    }
}
