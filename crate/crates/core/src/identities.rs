//! Aggregate statistics over the `O` and `D` classes and the verification
//! engine for every companion identity.
//!
//! All statistics come from direct enumeration. The generating functions in
//! [`crate::qseries`] are a second, independent witness and are never used
//! here.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{
    count_class, divisible_tuples, enumerate_class, ClassSpec, Constrained, DivisibleTuple, Family, Mode, PartRule,
};
use crate::error::{check_modulus, check_residue, Error, Result};
use crate::partition::{PartStats, Partition};

fn add(a: i64, b: u64) -> i64 {
    i64::try_from(b).ok().and_then(|b| a.checked_add(b)).expect("statistic overflow")
}

/// Sums of every per-partition statistic over one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTotals {
    pub r: u64,
    pub count: i64,
    pub ell: i64,
    /// indexed by `t` in `0..r`
    pub ell_mod: Vec<i64>,
    /// indexed by `t - 1` for `t` in `1..r`
    pub ell_bar_resid: Vec<i64>,
    pub ell_bar: i64,
    pub nonresidual: i64,
    pub t_window: i64,
    /// different parts with multiplicity `>= r` and not divisible by `r`
    pub repeated_off_multiple: i64,
}

impl ClassTotals {
    pub fn new(r: u64) -> Self {
        Self {
            r,
            count: 0,
            ell: 0,
            ell_mod: vec![0; r as usize],
            ell_bar_resid: vec![0; r as usize - 1],
            ell_bar: 0,
            nonresidual: 0,
            t_window: 0,
            repeated_off_multiple: 0,
        }
    }

    pub fn add_stats(&mut self, s: &PartStats) {
        debug_assert_eq!(s.r, self.r);
        self.count = add(self.count, 1);
        self.ell = add(self.ell, s.ell);
        for (acc, &x) in self.ell_mod.iter_mut().zip(&s.ell_mod) {
            *acc = add(*acc, x);
        }
        for (acc, &x) in self.ell_bar_resid.iter_mut().zip(&s.ell_bar_resid) {
            *acc = add(*acc, x);
        }
        self.ell_bar = add(self.ell_bar, s.ell_bar);
        self.nonresidual = add(self.nonresidual, s.nonresidual_total());
        self.t_window = add(self.t_window, s.t_window_count);
        self.repeated_off_multiple = add(self.repeated_off_multiple, s.repeated_off_multiple_count());
    }

    pub fn add_partition(&mut self, lambda: &Partition) {
        let s = PartStats::compute(lambda, self.r).expect("modulus checked at construction");
        self.add_stats(&s);
    }

    pub fn merge(&mut self, other: &ClassTotals) {
        let plus = |a: i64, b: i64| a.checked_add(b).expect("statistic overflow");
        self.count = plus(self.count, other.count);
        self.ell = plus(self.ell, other.ell);
        for (a, &b) in self.ell_mod.iter_mut().zip(&other.ell_mod) {
            *a = plus(*a, b);
        }
        for (a, &b) in self.ell_bar_resid.iter_mut().zip(&other.ell_bar_resid) {
            *a = plus(*a, b);
        }
        self.ell_bar = plus(self.ell_bar, other.ell_bar);
        self.nonresidual = plus(self.nonresidual, other.nonresidual);
        self.t_window = plus(self.t_window, other.t_window);
        self.repeated_off_multiple = plus(self.repeated_off_multiple, other.repeated_off_multiple);
    }

    pub fn collect<I: IntoIterator<Item = Partition>>(r: u64, items: I) -> Self {
        let mut totals = Self::new(r);
        for lambda in items {
            totals.add_partition(&lambda);
        }
        totals
    }

    pub fn ell_t(&self, t: u64) -> i64 {
        self.ell_mod[t as usize]
    }

    pub fn ell_bar_t(&self, t: u64) -> i64 {
        self.ell_bar_resid[(t - 1) as usize]
    }
}

pub fn class_totals(n: u64, spec: ClassSpec) -> Result<ClassTotals> {
    Ok(ClassTotals::collect(spec.r, enumerate_class(n, spec)?))
}

pub(crate) fn totals_with_rule<R: PartRule>(r: u64, rule: R, n: u64, j: u64, mode: Mode) -> ClassTotals {
    ClassTotals::collect(r, Constrained::new(rule, n, j, mode))
}

/// `b_{j,r}(n)` (or `b_{<=j,r}(n)`): total parts over the `O` class minus
/// total parts over the `D` class.
pub fn b_stat(n: u64, r: u64, j: u64, mode: Mode) -> Result<i64> {
    let o = class_totals(n, ClassSpec::new(Family::O, r, j, mode)?)?;
    let d = class_totals(n, ClassSpec::new(Family::D, r, j, mode)?)?;
    Ok(o.ell - d.ell)
}

/// `E_{j,r,t}(n) = sum_O (ell_t - ell_0) - sum_D ell-bar_t`
pub fn e_stat(n: u64, r: u64, j: u64, t: u64) -> Result<i64> {
    check_residue(r, t)?;
    let o = class_totals(n, ClassSpec::exact(Family::O, r, j)?)?;
    let d = class_totals(n, ClassSpec::exact(Family::D, r, j)?)?;
    Ok(o.ell_t(t) - o.ell_t(0) - d.ell_bar_t(t))
}

/// `b'_{j,r}(n)`: different parts over the `D` class minus different parts
/// over the `O` class (note the orientation).
pub fn b_prime_stat(n: u64, r: u64, j: u64, mode: Mode) -> Result<i64> {
    let o = class_totals(n, ClassSpec::new(Family::O, r, j, mode)?)?;
    let d = class_totals(n, ClassSpec::new(Family::D, r, j, mode)?)?;
    Ok(d.ell_bar - o.ell_bar)
}

/// `T_{j,r}(n)`: parts with multiplicity in `[r+1, 2r-1]` over `D_{j,r}(n)`.
pub fn t_stat(n: u64, r: u64, j: u64) -> Result<i64> {
    Ok(class_totals(n, ClassSpec::exact(Family::D, r, j)?)?.t_window)
}

/// `S^{m,k}_{j,r}(n)`: over the partitions of `D_{j,r}(n)` whose parts
/// repeated at least `r` times are exactly the `m_i` with nonresidual
/// multiplicity `r k_i`, the number of different parts with multiplicity at
/// least `r` and not divisible by `r`.
pub fn s_mk_stat(n: u64, r: u64, tuple: &DivisibleTuple) -> Result<i64> {
    Ok(d_fiber(n, r, tuple)?
        .map(|lambda| {
            let s = PartStats::compute(&lambda, r).expect("modulus checked");
            s.repeated_off_multiple_count() as i64
        })
        .sum())
}

/// The fiber `D^{m,k}_{j,r}(n)`: `mu-bar U (m_i)^{r k_i}` for `mu-bar` in
/// `D_{0,r}(n - r m.k)`.
pub fn d_fiber(n: u64, r: u64, tuple: &DivisibleTuple) -> Result<impl Iterator<Item = Partition>> {
    check_modulus(r)?;
    let used = r * tuple.dot();
    let block = tuple.block(1, r);
    let rest = if used <= n { Some(enumerate_class(n - used, ClassSpec::exact(Family::D, r, 0)?)?) } else { None };
    Ok(rest.into_iter().flatten().map(move |mu| mu.union(&block)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Franklin,
    BeckMain,
    BeckCumulative,
    ModularRefine,
    SumReduction,
    DistinctParts,
    DistinctCumulative,
    Diff3,
    NonresidualBalance,
    EulerCumulative,
    EulerMain,
    EulerDistinctCumulative,
    EulerDistinctParts,
}

impl TheoremId {
    /// Identities over the classical classes, in report order.
    pub const CLASSICAL: [TheoremId; 9] = [
        TheoremId::Franklin,
        TheoremId::BeckMain,
        TheoremId::BeckCumulative,
        TheoremId::ModularRefine,
        TheoremId::SumReduction,
        TheoremId::DistinctParts,
        TheoremId::DistinctCumulative,
        TheoremId::Diff3,
        TheoremId::NonresidualBalance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Franklin => "franklin",
            TheoremId::BeckMain => "beck_main",
            TheoremId::BeckCumulative => "beck_cumulative",
            TheoremId::ModularRefine => "modular_refine",
            TheoremId::SumReduction => "sum_reduction",
            TheoremId::DistinctParts => "distinct_parts",
            TheoremId::DistinctCumulative => "distinct_cumulative",
            TheoremId::Diff3 => "diff3",
            TheoremId::NonresidualBalance => "nonresidual_balance",
            TheoremId::EulerCumulative => "euler_cumulative",
            TheoremId::EulerMain => "euler_main",
            TheoremId::EulerDistinctCumulative => "euler_distinct_cumulative",
            TheoremId::EulerDistinctParts => "euler_distinct_parts",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = TheoremId::CLASSICAL.iter().chain(&[
            TheoremId::EulerCumulative,
            TheoremId::EulerMain,
            TheoremId::EulerDistinctCumulative,
            TheoremId::EulerDistinctParts,
        ]);
        for &id in all {
            if id.name() == s {
                return Ok(id);
            }
        }
        Err(format!("unknown theorem {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhsVariant {
    pub label: String,
    pub value: i64,
}

/// One identity instance.
///
/// `ok` holds iff `lhs` equals every right-hand side and no `defect` was
/// recorded; a defect marks a left-hand side that is not an integer (a sum
/// the identity claims divisible by `r - 1` that is not), in which case
/// `lhs` is the truncated quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub theorem: TheoremId,
    pub n: u64,
    pub r: u64,
    pub j: u64,
    pub t: Option<u64>,
    pub lhs: i64,
    pub rhs: Vec<RhsVariant>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
}

impl VerificationRecord {
    pub fn new(
        theorem: TheoremId,
        (n, r, j, t): (u64, u64, u64, Option<u64>),
        lhs: i64,
        rhs: Vec<(&str, i64)>,
    ) -> Self {
        let rhs: Vec<RhsVariant> =
            rhs.into_iter().map(|(label, value)| RhsVariant { label: label.to_string(), value }).collect();
        let ok = rhs.iter().all(|v| v.value == lhs);
        Self { theorem, n, r, j, t, lhs, rhs, ok, defect: None }
    }

    /// `numerator / divisor` as the left-hand side, flagging inexact division.
    pub fn new_quotient(
        theorem: TheoremId,
        params: (u64, u64, u64, Option<u64>),
        numerator: i64,
        divisor: i64,
        rhs: Vec<(&str, i64)>,
    ) -> Self {
        let mut rec = Self::new(theorem, params, numerator / divisor, rhs);
        if numerator % divisor != 0 {
            rec.ok = false;
            rec.defect = Some(format!("{numerator} is not divisible by {divisor}"));
        }
        rec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TSelector {
    All,
    One(u64),
}

impl TSelector {
    fn values(self, r: u64) -> Result<Vec<u64>> {
        match self {
            TSelector::All => Ok((1..r).collect()),
            TSelector::One(t) => {
                check_residue(r, t)?;
                Ok(vec![t])
            }
        }
    }
}

/// Exact-`j` class totals for both families at one `(n, r)`, for
/// `j = 0..=j_top`.
#[derive(Debug, Clone)]
pub struct SizeTable {
    pub n: u64,
    pub r: u64,
    pub o: Vec<ClassTotals>,
    pub d: Vec<ClassTotals>,
}

impl SizeTable {
    pub fn build(n: u64, r: u64, j_top: u64) -> Result<Self> {
        let mut o = Vec::new();
        let mut d = Vec::new();
        for j in 0..=j_top {
            o.push(class_totals(n, ClassSpec::exact(Family::O, r, j)?)?);
            d.push(class_totals(n, ClassSpec::exact(Family::D, r, j)?)?);
        }
        Ok(Self { n, r, o, d })
    }

    pub fn o_le(&self, j: u64) -> ClassTotals {
        cumulative(self.r, &self.o[..=j as usize])
    }

    pub fn d_le(&self, j: u64) -> ClassTotals {
        cumulative(self.r, &self.d[..=j as usize])
    }

    pub fn e(&self, j: u64, t: u64) -> i64 {
        let (o, d) = (&self.o[j as usize], &self.d[j as usize]);
        o.ell_t(t) - o.ell_t(0) - d.ell_bar_t(t)
    }
}

pub(crate) fn cumulative(r: u64, bins: &[ClassTotals]) -> ClassTotals {
    let mut acc = ClassTotals::new(r);
    for b in bins {
        acc.merge(b);
    }
    acc
}

/// `(j+1)|X_{j+1}| - j|X_j|`
pub(crate) fn relaxed_difference(bins: &[ClassTotals], j: u64) -> i64 {
    let j_i = j as i64;
    (j_i + 1) * bins[j as usize + 1].count - j_i * bins[j as usize].count
}

/// Checks the selected identities for every `n` in `ns`, `r` in `rs`,
/// `0 <= j <= j_max` and selected `t`. Records come back ordered by
/// `(theorem, n, r, j, t)` whatever the thread pool does.
pub fn verify(
    theorems: &[TheoremId],
    ns: RangeInclusive<u64>,
    rs: &[u64],
    j_max: u64,
    t: TSelector,
) -> Result<Vec<VerificationRecord>> {
    let mut rs = rs.to_vec();
    rs.sort_unstable();
    rs.dedup();
    for &r in &rs {
        check_modulus(r)?;
        t.values(r)?;
    }
    let mut theorems = theorems.to_vec();
    theorems.sort_unstable();
    theorems.dedup();
    if let Some(bad) = theorems.iter().find(|id| !TheoremId::CLASSICAL.contains(id)) {
        return Err(Error::WrongVerifier(bad.to_string()));
    }

    let grid: Vec<(u64, u64)> = ns.clone().flat_map(|n| rs.iter().map(move |&r| (n, r))).collect();
    let tables: HashMap<(u64, u64), SizeTable> = grid
        .par_iter()
        .map(|&(n, r)| SizeTable::build(n, r, j_max + 1).map(|tab| ((n, r), tab)))
        .collect::<Result<_>>()?;

    let needs_diff3 = theorems.contains(&TheoremId::Diff3);
    let diff3_lhs: HashMap<(u64, u64, u64), i64> = if needs_diff3 {
        grid.par_iter()
            .flat_map_iter(|&(n, r)| (0..=j_max).map(move |j| (n, r, j)))
            .map(|(n, r, j)| diff3_tuple_sum(n, r, j).map(|v| ((n, r, j), v)))
            .collect::<Result<_>>()?
    } else {
        HashMap::new()
    };

    let mut out = Vec::new();
    for &theorem in &theorems {
        for n in ns.clone() {
            for &r in &rs {
                let tab = &tables[&(n, r)];
                for j in 0..=j_max {
                    let ts = if theorem == TheoremId::ModularRefine { t.values(r)? } else { Vec::new() };
                    records_for(theorem, tab, j, &ts, &diff3_lhs, &mut out);
                }
            }
        }
    }
    Ok(out)
}

/// `sum over (m, k) of |O_{1,r}(n - r m.k)|`, `m` strictly increasing of
/// length `j`.
pub fn diff3_tuple_sum(n: u64, r: u64, j: u64) -> Result<i64> {
    let mut total = 0i64;
    for tuple in divisible_tuples(n, r, j as usize)? {
        let rest = n - r * tuple.dot();
        total = add(total, count_class(rest, ClassSpec::exact(Family::O, r, 1)?)?);
    }
    Ok(total)
}

fn records_for(
    theorem: TheoremId,
    tab: &SizeTable,
    j: u64,
    ts: &[u64],
    diff3_lhs: &HashMap<(u64, u64, u64), i64>,
    out: &mut Vec<VerificationRecord>,
) {
    let (n, r) = (tab.n, tab.r);
    let params = (n, r, j, None);
    let (o, d) = (&tab.o[j as usize], &tab.d[j as usize]);
    let ju = j as usize;
    let rm1 = r as i64 - 1;
    let main_o = relaxed_difference(&tab.o, j);
    let main_d = relaxed_difference(&tab.d, j);
    let next_o = (j as i64 + 1) * tab.o[ju + 1].count;
    let next_d = (j as i64 + 1) * tab.d[ju + 1].count;
    let rec = match theorem {
        TheoremId::Franklin => VerificationRecord::new(theorem, params, o.count, vec![("d_count", d.count)]),
        TheoremId::BeckMain => VerificationRecord::new_quotient(
            theorem,
            params,
            o.ell - d.ell,
            rm1,
            vec![("o_side", main_o), ("d_side", main_d)],
        ),
        TheoremId::BeckCumulative => VerificationRecord::new_quotient(
            theorem,
            params,
            tab.o_le(j).ell - tab.d_le(j).ell,
            rm1,
            vec![("o_side", next_o), ("d_side", next_d)],
        ),
        TheoremId::ModularRefine => {
            for &t in ts {
                out.push(VerificationRecord::new(
                    theorem,
                    (n, r, j, Some(t)),
                    tab.e(j, t),
                    vec![("o_side", main_o), ("d_side", main_d)],
                ));
            }
            return;
        }
        TheoremId::SumReduction => {
            let sum_e = (1..r).map(|t| tab.e(j, t)).sum();
            VerificationRecord::new(theorem, params, sum_e, vec![("b", o.ell - d.ell)])
        }
        TheoremId::DistinctParts => VerificationRecord::new(
            theorem,
            params,
            d.ell_bar - o.ell_bar,
            vec![("t_difference", tab.d[ju + 1].t_window - d.t_window)],
        ),
        TheoremId::DistinctCumulative => VerificationRecord::new(
            theorem,
            params,
            tab.d_le(j).ell_bar - tab.o_le(j).ell_bar,
            vec![("t_next", tab.d[ju + 1].t_window)],
        ),
        TheoremId::Diff3 => VerificationRecord::new(
            theorem,
            params,
            diff3_lhs[&(n, r, j)],
            vec![("relaxed_plus_ell0", main_o + o.ell_t(0))],
        ),
        TheoremId::NonresidualBalance => {
            VerificationRecord::new(theorem, params, r as i64 * o.ell_t(0), vec![("d_nonresidual", d.nonresidual)])
        }
        _ => unreachable!("filtered in verify"),
    };
    out.push(rec);
}
