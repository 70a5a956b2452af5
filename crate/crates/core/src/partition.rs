//! Canonical partitions and their per-modulus statistics.
//!
//! A partition is stored as `(part, multiplicity)` pairs with strictly
//! decreasing parts, so every statistic is linear in the number of distinct
//! parts and multiset union/difference are merges.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_modulus, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    pairs: Vec<(u64, u64)>,
    size: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from arbitrary `(part, mult)` pairs in any order.
    /// Repeated parts are merged; zero parts or multiplicities are rejected.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut raw: Vec<(u64, u64)> = Vec::new();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::Parse { token: format!("{part}^{mult}"), reason: "parts must be positive".into() });
            }
            if mult == 0 {
                return Err(Error::Parse {
                    token: format!("{part}^{mult}"),
                    reason: "multiplicities must be positive".into(),
                });
            }
            raw.push((part, mult));
        }
        raw.sort_unstable_by_key(|&(part, _)| std::cmp::Reverse(part));
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(raw.len());
        for (part, mult) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == part => last.1 = last.1.checked_add(mult).expect("multiplicity overflow"),
                _ => merged.push((part, mult)),
            }
        }
        Ok(Self::from_canonical(merged))
    }

    /// Builds a partition from a flat list of parts in any order.
    pub fn from_parts<I: IntoIterator<Item = u64>>(parts: I) -> Result<Self> {
        Self::from_pairs(parts.into_iter().map(|p| (p, 1)))
    }

    /// `pairs` must already be strictly decreasing with positive entries.
    pub(crate) fn from_canonical(pairs: Vec<(u64, u64)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(pairs.iter().all(|&(p, m)| p > 0 && m > 0));
        let size = pairs.iter().fold(0u64, |acc, &(p, m)| {
            p.checked_mul(m).and_then(|pm| acc.checked_add(pm)).expect("partition size overflow")
        });
        Self { pairs, size }
    }

    /// The rectangular partition `(part^mult)`; empty when `mult == 0`.
    pub fn rectangle(part: u64, mult: u64) -> Self {
        if mult == 0 {
            Self::empty()
        } else {
            assert!(part > 0, "parts must be positive");
            Self::from_canonical(vec![(part, mult)])
        }
    }

    pub(crate) fn into_pairs(self) -> Vec<(u64, u64)> {
        self.pairs
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of parts counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    /// Number of different parts.
    pub fn distinct_parts(&self) -> usize {
        self.pairs.len()
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.pairs.binary_search_by(|&(p, _)| part.cmp(&p)).map(|i| self.pairs[i].1).unwrap_or(0)
    }

    /// Parts in non-increasing order, with repetition.
    pub fn parts(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize))
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ma)), Some(&&(pb, mb))) => match pa.cmp(&pb) {
                    Ordering::Greater => {
                        out.push((pa, ma));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((pb, mb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((pa, ma.checked_add(mb).expect("multiplicity overflow")));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition::from_canonical(out)
    }

    /// Multiset difference `self \ other`; fails naming the first part of
    /// `other` (in decreasing order) that `self` cannot supply.
    pub fn difference(&self, other: &Partition) -> Result<Partition> {
        let mut out = Vec::with_capacity(self.pairs.len());
        let mut b = other.pairs.iter().peekable();
        for &(pa, ma) in &self.pairs {
            match b.peek() {
                Some(&&(pb, _)) if pb > pa => {
                    return Err(Error::NotSubMultiset { part: pb });
                }
                Some(&&(pb, mb)) if pb == pa => {
                    if mb > ma {
                        return Err(Error::NotSubMultiset { part: pb });
                    }
                    if ma > mb {
                        out.push((pa, ma - mb));
                    }
                    b.next();
                }
                _ => out.push((pa, ma)),
            }
        }
        if let Some(&(pb, _)) = b.next() {
            return Err(Error::NotSubMultiset { part: pb });
        }
        Ok(Partition::from_canonical(out))
    }

    pub fn stats(&self, r: u64) -> Result<PartStats> {
        PartStats::compute(self, r)
    }

    pub fn classify(&self, r: u64) -> Result<Classification> {
        check_modulus(r)?;
        Ok(self.classify_unchecked(r))
    }

    pub(crate) fn classify_unchecked(&self, r: u64) -> Classification {
        let mut c = Classification::default();
        for &(p, m) in &self.pairs {
            if p % r == 0 {
                c.j_div += 1;
            }
            if m >= r {
                c.j_rep += 1;
            }
        }
        c
    }
}

impl fmt::Display for Partition {
    /// Exponential notation: `5,3^2,1^4`; the empty partition renders as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_partition(text)
    }
}

fn parse_positive(token: &str, piece: &str, what: &str) -> Result<u64> {
    let value: u64 = piece.trim().parse().map_err(|_| Error::Parse {
        token: token.to_string(),
        reason: format!("{what} is not a non-negative integer"),
    })?;
    if value == 0 {
        return Err(Error::Parse { token: token.to_string(), reason: format!("{what} must be positive") });
    }
    Ok(value)
}

/// Parses comma-separated `part` or `part^mult` tokens in any order.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Partition::empty());
    }
    let mut pairs = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let (part, mult) = match token.split_once('^') {
            Some((p, m)) => (parse_positive(token, p, "part")?, parse_positive(token, m, "multiplicity")?),
            None => (parse_positive(token, token, "part")?, 1),
        };
        pairs.push((part, mult));
    }
    Partition::from_pairs(pairs)
}

/// Numbers of different parts divisible by `r` and repeated at least `r` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Classification {
    pub j_div: usize,
    pub j_rep: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartEntry {
    pub part: u64,
    pub mult: u64,
    /// `mult mod r`
    pub residual: u64,
    /// `mult - residual`, a multiple of `r`
    pub nonresidual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartStats {
    pub r: u64,
    pub ell: u64,
    /// `ell_mod[t]` counts parts (with multiplicity) congruent to `t` mod `r`.
    pub ell_mod: Vec<u64>,
    /// `ell_bar_resid[t - 1]` counts different parts whose residual
    /// multiplicity is at least `t`, for `1 <= t <= r - 1`.
    pub ell_bar_resid: Vec<u64>,
    pub ell_bar: u64,
    pub per_part: Vec<PartEntry>,
    /// Different parts with multiplicity in `[r + 1, 2r - 1]`.
    pub t_window_count: u64,
}

impl PartStats {
    pub fn compute(lambda: &Partition, r: u64) -> Result<Self> {
        check_modulus(r)?;
        let mut ell_mod = vec![0u64; r as usize];
        let mut ell_bar_resid = vec![0u64; (r - 1) as usize];
        let mut per_part = Vec::with_capacity(lambda.pairs.len());
        let mut t_window_count = 0;
        for &(part, mult) in &lambda.pairs {
            ell_mod[(part % r) as usize] += mult;
            let residual = mult % r;
            for slot in ell_bar_resid.iter_mut().take(residual as usize) {
                *slot += 1;
            }
            if mult > r && mult < 2 * r {
                t_window_count += 1;
            }
            per_part.push(PartEntry { part, mult, residual, nonresidual: mult - residual });
        }
        Ok(Self {
            r,
            ell: lambda.len(),
            ell_mod,
            ell_bar_resid,
            ell_bar: lambda.pairs.len() as u64,
            per_part,
            t_window_count,
        })
    }

    /// `ell_t`: parts congruent to `t` modulo `r`, `0 <= t < r`.
    pub fn ell_t(&self, t: u64) -> u64 {
        self.ell_mod[t as usize]
    }

    /// `ell-bar_t`: different parts with residual multiplicity at least `t`.
    pub fn ell_bar_t(&self, t: u64) -> u64 {
        assert!(t >= 1 && t < self.r, "t out of range");
        self.ell_bar_resid[(t - 1) as usize]
    }

    /// Sum of nonresidual multiplicities over all different parts.
    pub fn nonresidual_total(&self) -> u64 {
        self.per_part.iter().map(|e| e.nonresidual).sum()
    }

    /// Different parts with multiplicity at least `r` but not divisible by `r`.
    pub fn repeated_off_multiple_count(&self) -> u64 {
        self.per_part.iter().filter(|e| e.mult >= self.r && e.residual != 0).count() as u64
    }
}
