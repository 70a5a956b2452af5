//! Exact truncated power series in `q` and `w`.
//!
//! A series keeps coefficients of `w^j q^n` for `n <= N`, `j <= J`. The
//! generating functions below are the `z = 1` values and first
//! `z`-derivatives at `z = 1` of the trivariate generating functions for the
//! `O` and `D` classes, so every coefficient is a sum of a statistic over a
//! class and can be checked against enumeration.
//!
//! Products of the form `1/(1 - q^k)`, `1 - q^k` and `1/(1 - (1-w) q^k)` are
//! applied in place by a linear recurrence; general multiplication is only
//! needed for ring-law checks.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumeration::{Family, DEFAULT_MAX_N};
use crate::error::{check_modulus, check_residue, Error, Result};

pub const DEFAULT_N: usize = 40;
pub const DEFAULT_J: usize = 8;

fn plus(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("series coefficient overflow")
}

fn minus(a: i128, b: i128) -> i128 {
    a.checked_sub(b).expect("series coefficient overflow")
}

fn times(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("series coefficient overflow")
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedBivariateSeries {
    n_max: usize,
    j_max: usize,
    coeff: Vec<i128>,
}

pub type Series = TruncatedBivariateSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub n: usize,
    pub j: usize,
    pub coefficient: i128,
}

impl TruncatedBivariateSeries {
    pub fn zero(n_max: usize, j_max: usize) -> Result<Self> {
        if n_max as u64 > DEFAULT_MAX_N {
            return Err(Error::BoundExceeded { n: n_max as u64, limit: DEFAULT_MAX_N });
        }
        Ok(Self { n_max, j_max, coeff: vec![0; (n_max + 1) * (j_max + 1)] })
    }

    pub fn one(n_max: usize, j_max: usize) -> Result<Self> {
        Self::monomial(1, 0, 0, n_max, j_max)
    }

    /// `c w^j q^n`, or zero when the term lies beyond the truncation.
    pub fn monomial(c: i128, n: usize, j: usize, n_max: usize, j_max: usize) -> Result<Self> {
        let mut s = Self::zero(n_max, j_max)?;
        if n <= n_max && j <= j_max {
            s.set(n, j, c);
        }
        Ok(s)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    fn idx(&self, n: usize, j: usize) -> usize {
        n * (self.j_max + 1) + j
    }

    /// Coefficient of `w^j q^n`; zero outside the stored window.
    pub fn get(&self, n: usize, j: usize) -> i128 {
        if n <= self.n_max && j <= self.j_max {
            self.coeff[self.idx(n, j)]
        } else {
            0
        }
    }

    pub fn set(&mut self, n: usize, j: usize, c: i128) {
        let i = self.idx(n, j);
        self.coeff[i] = c;
    }

    fn bump(&mut self, n: usize, j: usize, c: i128) {
        let i = self.idx(n, j);
        self.coeff[i] = plus(self.coeff[i], c);
    }

    pub fn row(&self, n: usize) -> &[i128] {
        let start = self.idx(n, 0);
        &self.coeff[start..start + self.j_max + 1]
    }

    pub fn entries(&self) -> impl Iterator<Item = Coefficient> + '_ {
        (0..=self.n_max)
            .flat_map(move |n| (0..=self.j_max).map(move |j| Coefficient { n, j, coefficient: self.get(n, j) }))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.n_max, self.j_max) != (other.n_max, other.j_max) {
            return Err(Error::TruncationMismatch(self.n_max, self.j_max, other.n_max, other.j_max));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, &b) in out.coeff.iter_mut().zip(&other.coeff) {
            *a = plus(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, &b) in out.coeff.iter_mut().zip(&other.coeff) {
            *a = minus(*a, b);
        }
        Ok(out)
    }

    pub fn scalar(&self, c: i128) -> Self {
        let mut out = self.clone();
        for a in &mut out.coeff {
            *a = times(*a, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n_max, self.j_max)?;
        for n1 in 0..=self.n_max {
            for j1 in 0..=self.j_max {
                let a = self.get(n1, j1);
                if a == 0 {
                    continue;
                }
                for n2 in 0..=self.n_max - n1 {
                    for j2 in 0..=self.j_max - j1 {
                        let b = other.get(n2, j2);
                        if b != 0 {
                            out.bump(n1 + n2, j1 + j2, times(a, b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self *= 1/(1 - q^k)`
    pub fn mul_geom(&mut self, k: usize) {
        assert!(k > 0);
        for n in k..=self.n_max {
            for j in 0..=self.j_max {
                let prev = self.get(n - k, j);
                self.bump(n, j, prev);
            }
        }
    }

    /// `self *= 1 - q^k`
    pub fn mul_one_minus(&mut self, k: usize) {
        assert!(k > 0);
        for n in (k..=self.n_max).rev() {
            for j in 0..=self.j_max {
                let prev = self.get(n - k, j);
                self.bump(n, j, -prev);
            }
        }
    }

    /// `self *= 1/(1 - (1-w) q^k)`, i.e. `y[n] = x[n] + (1-w) y[n-k]`.
    pub fn mul_inv_one_minus_1mw(&mut self, k: usize) {
        assert!(k > 0);
        for n in k..=self.n_max {
            for j in (0..=self.j_max).rev() {
                let mut d = self.get(n - k, j);
                if j > 0 {
                    d = minus(d, self.get(n - k, j - 1));
                }
                self.bump(n, j, d);
            }
        }
    }

    /// `self *= 1 - (1-w) q^k`
    pub fn mul_one_minus_1mw(&mut self, k: usize) {
        assert!(k > 0);
        for n in (k..=self.n_max).rev() {
            for j in (0..=self.j_max).rev() {
                let mut d = self.get(n - k, j);
                if j > 0 {
                    d = minus(d, self.get(n - k, j - 1));
                }
                self.bump(n, j, -d);
            }
        }
    }

    /// `self *= 1 + w q^k/(1 - q^k) = (1 - (1-w) q^k)/(1 - q^k)`
    pub fn mul_w_factor(&mut self, k: usize) {
        self.mul_one_minus_1mw(k);
        self.mul_geom(k);
    }

    /// `self *= w`
    pub fn shift_w(&mut self) {
        for n in 0..=self.n_max {
            for j in (0..=self.j_max).rev() {
                let v = if j > 0 { self.get(n, j - 1) } else { 0 };
                self.set(n, j, v);
            }
        }
    }

    /// `self *= (1 - w)`
    pub fn mul_one_minus_w(&self) -> Self {
        let mut shifted = self.clone();
        shifted.shift_w();
        self.sub(&shifted).expect("same truncation")
    }
}

impl fmt::Debug for TruncatedBivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Series(N={}, J={})", self.n_max, self.j_max)?;
        for n in 0..=self.n_max {
            writeln!(f, "  q^{n}: {:?}", self.row(n))?;
        }
        Ok(())
    }
}

/// `1/(1 - q^k)` as a series.
pub fn geom_factor(k: usize, n_max: usize, j_max: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::InvalidSeries("geom_factor needs k >= 1".into()));
    }
    let mut s = Series::one(n_max, j_max)?;
    s.mul_geom(k);
    Ok(s)
}

/// `1 + w q^k/(1 - q^k)` as a series.
pub fn w_factor(k: usize, n_max: usize, j_max: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::InvalidSeries("w_factor needs k >= 1".into()));
    }
    let mut s = Series::one(n_max, j_max)?;
    s.mul_w_factor(k);
    Ok(s)
}

fn steps(r: u64, n_max: usize) -> impl Iterator<Item = usize> {
    let r = r as usize;
    (1..).map(move |m| m * r).take_while(move |&k| k <= n_max)
}

/// `prod_n (1 + w q^{rn}/(1 - q^{rn}))`
fn apply_w_product(s: &mut Series, r: u64) {
    for k in steps(r, s.n_max) {
        s.mul_w_factor(k);
    }
}

/// `prod_{n not divisible by r} 1/(1 - q^n)`
fn apply_free_product(s: &mut Series, r: u64) {
    for k in 1..=s.n_max {
        if !(k as u64).is_multiple_of(r) {
            s.mul_geom(k);
        }
    }
}

/// `prod_n (1 - q^{rn})/(1 - q^n)`
fn apply_bounded_product(s: &mut Series, r: u64) {
    for k in steps(r, s.n_max) {
        s.mul_one_minus(k);
    }
    for k in 1..=s.n_max {
        s.mul_geom(k);
    }
}

/// Multiplies by the `z = 1` product of the family: the class generating
/// function with `c[n][j] = |X_{j,r}(n)|`.
fn apply_class_product(s: &mut Series, family: Family, r: u64) {
    match family {
        Family::O => apply_free_product(s, r),
        Family::D => apply_bounded_product(s, r),
    }
    apply_w_product(s, r);
}

pub fn gf_class(family: Family, r: u64, n_max: usize, j_max: usize) -> Result<Series> {
    check_modulus(r)?;
    let mut s = Series::one(n_max, j_max)?;
    apply_class_product(&mut s, family, r);
    Ok(s)
}

/// `sum_{n >= 0} q^{nr+t}/(1 - q^{nr+t})`
pub fn lambert_residue(r: u64, t: u64, n_max: usize, j_max: usize) -> Result<Series> {
    check_modulus(r)?;
    let mut s = Series::zero(n_max, j_max)?;
    if t == 0 {
        return Err(Error::InvalidSeries("lambert_residue needs t >= 1".into()));
    }
    let mut base = t as usize;
    while base <= n_max {
        let mut e = base;
        while e <= n_max {
            s.bump(e, 0, 1);
            e += base;
        }
        base += r as usize;
    }
    Ok(s)
}

/// `sum_{m >= 1} q^{tm}/(1 - q^{rm})`
pub fn lambert_divisor(r: u64, t: u64, n_max: usize, j_max: usize) -> Result<Series> {
    check_modulus(r)?;
    if t == 0 {
        return Err(Error::InvalidSeries("lambert_divisor needs t >= 1".into()));
    }
    let mut s = Series::zero(n_max, j_max)?;
    let (r, t) = (r as usize, t as usize);
    for m in 1..=n_max {
        let mut e = t * m;
        while e <= n_max {
            s.bump(e, 0, 1);
            e += r * m;
        }
    }
    Ok(s)
}

/// Sums `term(rm)` over `m >= 1` with `rm <= N`; `term` fills a zero series.
fn lambert_sum<F>(r: u64, n_max: usize, j_max: usize, mut term: F) -> Result<Series>
where
    F: FnMut(usize, &mut Series) -> Result<()>,
{
    let mut acc = Series::zero(n_max, j_max)?;
    for k in steps(r, n_max) {
        let mut s = Series::zero(n_max, j_max)?;
        term(k, &mut s)?;
        acc = acc.add(&s)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DerivKind {
    /// `sum over O_{j,r}(n)` of `ell_t`
    #[serde(rename = "O_rt")]
    ORt,
    /// `sum over D_{j,r}(n)` of `ell-bar_t`
    #[serde(rename = "D_rt")]
    DRt,
    /// `sum over O_{j,r}(n)` of `ell_0`
    #[serde(rename = "O_r0")]
    OR0,
    /// `sum over D_{j,r}(n)` of the nonresidual multiplicities
    #[serde(rename = "Dbar")]
    DBar,
    /// `sum over O_{j,r}(n)` of the number of different parts
    #[serde(rename = "Oprime")]
    OPrime,
    /// `sum over D_{j,r}(n)` of the number of different parts
    #[serde(rename = "Dprime")]
    DPrime,
}

impl DerivKind {
    pub const ALL: [DerivKind; 6] =
        [DerivKind::ORt, DerivKind::DRt, DerivKind::OR0, DerivKind::DBar, DerivKind::OPrime, DerivKind::DPrime];

    pub fn name(self) -> &'static str {
        match self {
            DerivKind::ORt => "O_rt",
            DerivKind::DRt => "D_rt",
            DerivKind::OR0 => "O_r0",
            DerivKind::DBar => "Dbar",
            DerivKind::OPrime => "Oprime",
            DerivKind::DPrime => "Dprime",
        }
    }

    pub fn needs_t(self) -> bool {
        matches!(self, DerivKind::ORt | DerivKind::DRt)
    }
}

impl fmt::Display for DerivKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DerivKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        DerivKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown generating function {s:?}"))
    }
}

/// First `z`-derivative at `z = 1` of the chosen trivariate generating
/// function, from its logarithmic-derivative closed form.
pub fn gf_deriv(which: DerivKind, r: u64, t: Option<u64>, n_max: usize, j_max: usize) -> Result<Series> {
    check_modulus(r)?;
    let t = match (which.needs_t(), t) {
        (true, Some(t)) => {
            check_residue(r, t)?;
            t
        }
        (true, None) => return Err(Error::InvalidSeries(format!("{which} needs a residue t"))),
        (false, Some(_)) => return Err(Error::InvalidSeries(format!("{which} takes no residue t"))),
        (false, None) => 0,
    };
    let (family, mut sum) = match which {
        DerivKind::ORt => (Family::O, lambert_divisor(r, t, n_max, j_max)?),
        DerivKind::DRt => {
            // (q^{tm} - q^{rm})/(1 - q^{rm})
            let s = lambert_divisor(r, t, n_max, j_max)?.sub(&lambert_divisor(r, r, n_max, j_max)?)?;
            (Family::D, s)
        }
        DerivKind::OR0 => (Family::O, zero_class_sum(r, 1, n_max, j_max)?),
        DerivKind::DBar => (Family::D, zero_class_sum(r, r as i128, n_max, j_max)?),
        DerivKind::OPrime => {
            let mut s = lambert_sum(r, n_max, j_max, |k, s| {
                if s.j_max >= 1 {
                    s.set(k, 1, 1);
                }
                s.mul_inv_one_minus_1mw(k);
                Ok(())
            })?;
            for m in 1..=n_max {
                if !(m as u64).is_multiple_of(r) {
                    s.bump(m, 0, 1);
                }
            }
            (Family::O, s)
        }
        DerivKind::DPrime => {
            let mut acc = Series::zero(n_max, j_max)?;
            for m in 1..=n_max {
                // 1 - (1 - q^m)/(1 - (1-w) q^{rm})
                let mut s = Series::one(n_max, j_max)?;
                s.mul_one_minus(m);
                s.mul_inv_one_minus_1mw(r as usize * m);
                acc = acc.add(&Series::one(n_max, j_max)?.sub(&s)?)?;
            }
            (Family::D, acc)
        }
    };
    apply_class_product(&mut sum, family, r);
    Ok(sum)
}

/// `sum_m c w x/((1 - x)(1 - (1-w) x))`, `x = q^{rm}`
fn zero_class_sum(r: u64, c: i128, n_max: usize, j_max: usize) -> Result<Series> {
    lambert_sum(r, n_max, j_max, |k, s| {
        if s.j_max >= 1 {
            s.set(k, 1, c);
        }
        s.mul_geom(k);
        s.mul_inv_one_minus_1mw(k);
        Ok(())
    })
}

/// Generating function of `E_{j,r,t}(n)`:
/// `gf_class(O) * sum_m (1-w) x/(1 - (1-w) x)`, `x = q^{rm}`. The closed form
/// does not depend on `t`; `t` is validated only.
pub fn gf_e(r: u64, t: u64, n_max: usize, j_max: usize) -> Result<Series> {
    check_residue(r, t)?;
    let mut sum = lambert_sum(r, n_max, j_max, |k, s| {
        s.set(k, 0, 1);
        if s.j_max >= 1 {
            s.set(k, 1, -1);
        }
        s.mul_inv_one_minus_1mw(k);
        Ok(())
    })?;
    apply_class_product(&mut sum, Family::O, r);
    Ok(sum)
}

/// Generating function with `c[n][j] = T_{j+1,r}(n)`:
/// `gf_class(D) * sum_m (q^{(r+1)m} - q^{2rm})/(1 - (1-w) q^{rm})`.
pub fn gf_t(r: u64, n_max: usize, j_max: usize) -> Result<Series> {
    check_modulus(r)?;
    let mut acc = Series::zero(n_max, j_max)?;
    let r_us = r as usize;
    for m in 1..=n_max {
        if (r_us + 1) * m > n_max {
            break;
        }
        let mut s = Series::zero(n_max, j_max)?;
        s.set((r_us + 1) * m, 0, 1);
        if 2 * r_us * m <= n_max {
            s.set(2 * r_us * m, 0, -1);
        }
        s.mul_inv_one_minus_1mw(r_us * m);
        acc = acc.add(&s)?;
    }
    apply_class_product(&mut acc, Family::D, r);
    Ok(acc)
}
