//! Reference implementations used only by tests. Partitions here are flat
//! non-increasing part lists, and nothing below calls into the crate except
//! the conversion helper.

#![allow(dead_code)]

use std::collections::BTreeMap;

use beck_core::Partition;

/// `p(0..=n_max)` by Euler's pentagonal recurrence.
pub fn pentagonal_counts(n_max: usize) -> Vec<u128> {
    let mut p = vec![0u128; n_max + 1];
    p[0] = 1;
    for n in 1..=n_max {
        let mut acc: i128 = 0;
        for k in 1.. {
            let k = k as i128;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                acc += sign * p[n - g2] as i128;
            }
        }
        p[n] = acc as u128;
    }
    p
}

/// Every partition of `n` as a flat list, largest part first.
pub fn brute_partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn mults(parts: &[u64]) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

pub fn j_div(parts: &[u64], r: u64) -> u64 {
    mults(parts).keys().filter(|&&p| p % r == 0).count() as u64
}

pub fn j_rep(parts: &[u64], r: u64) -> u64 {
    mults(parts).values().filter(|&&s| s >= r).count() as u64
}

pub fn in_o(parts: &[u64], r: u64, j: u64) -> bool {
    j_div(parts, r) == j
}

pub fn in_d(parts: &[u64], r: u64, j: u64) -> bool {
    j_rep(parts, r) == j
}

pub fn ell(parts: &[u64]) -> i64 {
    parts.len() as i64
}

pub fn ell_t(parts: &[u64], r: u64, t: u64) -> i64 {
    parts.iter().filter(|&&p| p % r == t).count() as i64
}

pub fn ell_bar(parts: &[u64]) -> i64 {
    mults(parts).len() as i64
}

pub fn ell_bar_t(parts: &[u64], r: u64, t: u64) -> i64 {
    mults(parts).values().filter(|&&s| s % r >= t).count() as i64
}

pub fn nonresidual(parts: &[u64], r: u64) -> i64 {
    mults(parts).values().map(|&s| (s - s % r) as i64).sum()
}

pub fn t_window(parts: &[u64], r: u64) -> i64 {
    mults(parts).values().filter(|&&s| s > r && s < 2 * r).count() as i64
}

/// Sum of `f` over the class `X_{j,r}(n)` picked by `member`.
pub fn class_sum<M, F>(n: u64, member: M, f: F) -> i64
where
    M: Fn(&[u64]) -> bool,
    F: Fn(&[u64]) -> i64,
{
    brute_partitions(n).iter().filter(|p| member(p)).map(|p| f(p)).sum()
}

pub fn to_partition(parts: &[u64]) -> Partition {
    Partition::from_parts(parts.iter().copied()).unwrap()
}
