//! Constructive maps between the `O` and `D` families.
//!
//! [`ZeroClassBijection`] is the size-preserving bijection
//! `O_{0,r}(n) -> D_{0,r}(n)` that Franklin's map is built on. The default
//! realization is Glaisher's base-`r` map ([`Glaisher`]); every function here
//! that needs the zero-class bijection has a `_with` variant taking any
//! implementation.

use serde::Serialize;

use crate::enumeration::DivisibleTuple;
use crate::error::{check_modulus, Error, Result};
use crate::partition::Partition;

pub trait ZeroClassBijection {
    /// `O_{0,r}(n) -> D_{0,r}(n)`
    fn forward(&self, lambda: &Partition, r: u64) -> Result<Partition>;

    /// `D_{0,r}(n) -> O_{0,r}(n)`
    fn inverse(&self, mu: &Partition, r: u64) -> Result<Partition>;
}

/// Glaisher's map: a part `i` with multiplicity `s = sum a_v r^v` becomes
/// parts `i r^v` with multiplicity `a_v`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Glaisher;

impl ZeroClassBijection for Glaisher {
    fn forward(&self, lambda: &Partition, r: u64) -> Result<Partition> {
        check_modulus(r)?;
        let mut out = Vec::new();
        for &(part, mult) in lambda.pairs() {
            if part % r == 0 {
                return Err(Error::DivisiblePart { part, r });
            }
            let (mut rest, mut scaled) = (mult, part);
            while rest > 0 {
                let digit = rest % r;
                if digit > 0 {
                    out.push((scaled, digit));
                }
                rest /= r;
                if rest > 0 {
                    scaled = scaled.checked_mul(r).expect("part overflow");
                }
            }
        }
        // parts i r^v are pairwise distinct because no i is divisible by r
        Partition::from_pairs(out)
    }

    fn inverse(&self, mu: &Partition, r: u64) -> Result<Partition> {
        check_modulus(r)?;
        let mut out = Vec::new();
        for &(part, mult) in mu.pairs() {
            if mult >= r {
                return Err(Error::RepeatedPart { part, mult, r });
            }
            let (mut base, mut weight) = (part, 1u64);
            while base % r == 0 {
                base /= r;
                weight *= r;
            }
            out.push((base, mult * weight));
        }
        Partition::from_pairs(out)
    }
}

pub fn psi(lambda: &Partition, r: u64) -> Result<Partition> {
    Glaisher.forward(lambda, r)
}

pub fn psi_inv(mu: &Partition, r: u64) -> Result<Partition> {
    Glaisher.inverse(mu, r)
}

/// Franklin's map `O_{j,r}(n) -> D_{j,r}(n)`: strip the parts `(m_i r)^{k_i}`,
/// send the rest through the zero-class bijection, adjoin `(m_i)^{k_i r}`.
pub fn franklin_phi(lambda: &Partition, r: u64) -> Result<Partition> {
    franklin_phi_with(&Glaisher, lambda, r)
}

pub fn franklin_phi_inv(mu: &Partition, r: u64) -> Result<Partition> {
    franklin_phi_inv_with(&Glaisher, mu, r)
}

pub fn franklin_phi_with<B: ZeroClassBijection + ?Sized>(zero: &B, lambda: &Partition, r: u64) -> Result<Partition> {
    check_modulus(r)?;
    let (stripped, rest): (Vec<_>, Vec<_>) = lambda.pairs().iter().partition(|&&(part, _)| part % r == 0);
    let rest = Partition::from_pairs(rest)?;
    let adjoined = Partition::from_pairs(stripped.into_iter().map(|(part, k)| (part / r, k * r)))?;
    Ok(zero.forward(&rest, r)?.union(&adjoined))
}

pub fn franklin_phi_inv_with<B: ZeroClassBijection + ?Sized>(zero: &B, mu: &Partition, r: u64) -> Result<Partition> {
    check_modulus(r)?;
    let mut rest = Vec::new();
    let mut adjoined = Vec::new();
    for &(part, mult) in mu.pairs() {
        let (k, d) = (mult / r, mult % r);
        if k > 0 {
            adjoined.push((part * r, k));
        }
        if d > 0 {
            rest.push((part, d));
        }
    }
    let rest = Partition::from_pairs(rest)?;
    Ok(zero.inverse(&rest, r)?.union(&Partition::from_pairs(adjoined)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaVariant {
    /// `mu -> mu U (m_i r)^{k_i}` on `O_{1,r}`.
    DivisibleParts,
    /// `mu -> mu U (m_i)^{r k_i}` on the partitions of `D_{1,r}` whose
    /// repeated part has multiplicity in `[r+1, 2r-1]`.
    RepeatedMults,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaCase {
    /// The distinguished part of `mu` is one of the adjoined values; the
    /// image stays in the `j` class.
    CollidesExisting,
    /// The distinguished part is new; the image lands in the `j + 1` class.
    FreshPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaOutcome {
    pub image: Partition,
    pub case: ZetaCase,
    /// Zero-based position in `m` of the collided value, set iff
    /// `case == CollidesExisting`.
    pub collided_index: Option<usize>,
}

/// The adjoin-and-classify map. For `DivisibleParts` the distinguished part
/// of `mu` is its unique part divisible by `r`, compared against `m_t r`;
/// for `RepeatedMults` it is the unique part with multiplicity in
/// `[r+1, 2r-1]`, compared against `m_t`.
pub fn zeta(mu: &Partition, r: u64, tuple: &DivisibleTuple, variant: ZetaVariant) -> Result<ZetaOutcome> {
    check_modulus(r)?;
    let (distinguished, block) = match variant {
        ZetaVariant::DivisibleParts => {
            let divisible: Vec<u64> = mu.pairs().iter().map(|&(part, _)| part).filter(|part| part % r == 0).collect();
            if divisible.len() != 1 {
                return Err(Error::ZetaPrecondition(format!(
                    "{mu:?} has {} different parts divisible by {r}, expected 1",
                    divisible.len()
                )));
            }
            (divisible[0] / r, tuple.block(r, 1))
        }
        ZetaVariant::RepeatedMults => {
            let mut window = Vec::new();
            for &(part, mult) in mu.pairs() {
                if mult > r && mult < 2 * r {
                    window.push(part);
                } else if mult >= r {
                    return Err(Error::ZetaPrecondition(format!(
                        "part {part} of {mu} has multiplicity {mult} outside [{}, {}] but >= {r}",
                        r + 1,
                        2 * r - 1
                    )));
                }
            }
            if window.len() != 1 {
                return Err(Error::ZetaPrecondition(format!(
                    "{mu} has {} parts with multiplicity in [{}, {}], expected 1",
                    window.len(),
                    r + 1,
                    2 * r - 1
                )));
            }
            (window[0], tuple.block(1, r))
        }
    };
    let collided_index = tuple.m.iter().position(|&m| m == distinguished);
    Ok(ZetaOutcome {
        image: mu.union(&block),
        case: if collided_index.is_some() { ZetaCase::CollidesExisting } else { ZetaCase::FreshPart },
        collided_index,
    })
}
