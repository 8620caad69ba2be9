//! Order bookkeeping for the reduced 5-dimensional spin bordism of `BZ/n`
//! (n an odd prime power) and of the metacyclic groups `D_(p^k,3)`.
//!
//! Only orders are modeled. Where the isomorphism type is not pinned down
//! the functions return [`Error::Unspecified`] instead of a guess.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num_theory::{gcd, is_prime, PrimeModulus};

/// A finitely generated abelian group, as far as we need to describe one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbelianGroup {
    Trivial,
    Integers,
    Cyclic(u64),
    /// Direct sum of finite cyclic groups of the given orders.
    DirectSum(Vec<u64>),
}

impl AbelianGroup {
    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            AbelianGroup::Trivial => Some(1),
            AbelianGroup::Integers => None,
            AbelianGroup::Cyclic(n) => Some(*n),
            AbelianGroup::DirectSum(parts) => {
                parts.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
            }
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(
            self,
            AbelianGroup::Trivial | AbelianGroup::Integers | AbelianGroup::Cyclic(_)
        )
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::Trivial => f.write_str("0"),
            AbelianGroup::Integers => f.write_str("Z"),
            AbelianGroup::Cyclic(n) => write!(f, "Z/{n}"),
            AbelianGroup::DirectSum(parts) => {
                let s: Vec<String> = parts.iter().map(|n| format!("Z/{n}")).collect();
                f.write_str(&s.join(" + "))
            }
        }
    }
}

/// Spin bordism coefficient groups in degrees 0 through 5.
pub fn spin_coefficient(degree: usize) -> Option<AbelianGroup> {
    use AbelianGroup::*;
    Some(match degree {
        0 => Integers,
        1 | 2 => Cyclic(2),
        3 => Trivial,
        4 => Integers,
        5 => Trivial,
        _ => return None,
    })
}

/// Order of `H~_r(BZ/n; G)` for `r >= 1`.
///
/// With integer coefficients this is `Z/n` in odd degrees and 0 in even
/// degrees; with `Z/m` coefficients it is `Z/gcd(n, m)` in every positive
/// degree.
fn reduced_homology_order(n: u64, r: usize, coeff: &AbelianGroup) -> u64 {
    debug_assert!(r >= 1);
    match coeff {
        AbelianGroup::Trivial => 1,
        AbelianGroup::Integers => {
            if r % 2 == 1 {
                n
            } else {
                1
            }
        }
        AbelianGroup::Cyclic(m) => gcd(n, *m),
        AbelianGroup::DirectSum(parts) => parts.iter().map(|&m| gcd(n, m)).product(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Term {
    pub r: usize,
    pub s: usize,
    pub order: u64,
}

/// The `E^2` terms on the line `r + s = 5`, `r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Diagonal {
    pub n: u64,
    pub terms: Vec<E2Term>,
}

impl E2Diagonal {
    pub fn order_at(&self, r: usize, s: usize) -> Option<u64> {
        self.terms
            .iter()
            .find(|t| t.r == r && t.s == s)
            .map(|t| t.order)
    }

    /// Product of the term orders; the spectral sequence collapses, so this
    /// is the order of the bordism group.
    pub fn total_order(&self) -> Result<u64> {
        self.terms
            .iter()
            .try_fold(1u64, |acc, t| acc.checked_mul(t.order))
            .ok_or_else(|| Error::Overflow(format!("E2 product for n = {}", self.n)))
    }
}

/// Splits `n = p^k` with `p` an odd prime.
fn odd_prime_power(n: u64) -> Result<(u64, u32)> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(n));
    }
    if n < 3 {
        return Err(Error::NotOddPrimePower(n));
    }
    let p = (3..=n)
        .step_by(2)
        .find(|d| n.is_multiple_of(*d))
        .expect("n is its own divisor");
    let (mut m, mut k) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 || !is_prime(p) {
        return Err(Error::NotOddPrimePower(n));
    }
    Ok((p, k))
}

pub fn e2_diagonal(n: u64) -> Result<E2Diagonal> {
    odd_prime_power(n)?;
    let terms = (1..=5)
        .map(|r| {
            let s = 5 - r;
            let coeff = spin_coefficient(s).expect("degree <= 4");
            E2Term {
                r,
                s,
                order: reduced_homology_order(n, r, &coeff),
            }
        })
        .collect();
    Ok(E2Diagonal { n, terms })
}

fn odd_prime(p: u64) -> Result<PrimeModulus> {
    if p == 2 {
        return Err(Error::EvenModulus(2));
    }
    PrimeModulus::at_least(p, 3)
}

fn check_k(k: u32, min: u32) -> Result<()> {
    if k < min {
        return Err(Error::ExponentTooSmall { k, min });
    }
    Ok(())
}

fn checked_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

/// `|Omega~_5(BZ/p^k)| = p^(2k)`.
pub fn bordism_order_cyclic(p: u64, k: u32) -> Result<u64> {
    odd_prime(p)?;
    check_k(k, 1)?;
    let e = k
        .checked_mul(2)
        .ok_or_else(|| Error::Overflow(format!("exponent 2*{k}")))?;
    checked_power(p, e)
}

/// Order of a `Z/p^k` lens space class: `p^k`, except 9 for `p = 3, k = 1`.
/// The case `p = 3, k >= 2` is not determined.
pub fn lens_class_order(p: u64, k: u32) -> Result<u64> {
    odd_prime(p)?;
    check_k(k, 1)?;
    match (p, k) {
        (3, 1) => Ok(9),
        (3, _) => Err(Error::Unspecified(format!(
            "lens class order in Omega_5(BZ/3^{k})"
        ))),
        _ => checked_power(p, k),
    }
}

/// `Z/9` for `p = 3`, `Z/p + Z/p` otherwise; only `k = 1` is known.
pub fn group_structure_cyclic(p: u64, k: u32) -> Result<AbelianGroup> {
    odd_prime(p)?;
    check_k(k, 1)?;
    if k >= 2 {
        return Err(Error::Unspecified(format!(
            "isomorphism type of Omega_5(BZ/{p}^{k})"
        )));
    }
    Ok(if p == 3 {
        AbelianGroup::Cyclic(9)
    } else {
        AbelianGroup::DirectSum(vec![p, p])
    })
}

/// Order multiplicativity along
/// `0 -> Omega(BZ/p^(k-1)) -> Omega(BZ/p^k) -> Omega(BZ/p) -> 0`.
pub fn extension_order_check(p: u64, k: u32) -> Result<bool> {
    PrimeModulus::at_least(p, 5)?;
    check_k(k, 2)?;
    let middle = bordism_order_cyclic(p, k)?;
    let left = bordism_order_cyclic(p, k - 1)?;
    let right = bordism_order_cyclic(p, 1)?;
    Ok(left.checked_mul(right) == Some(middle))
}

/// The extension above cannot split: a lens class has order `p^k`, more
/// than the exponent `p` of `Z/p + Z/p`.
pub fn non_splitness_witness(p: u64, k: u32) -> Result<bool> {
    PrimeModulus::at_least(p, 5)?;
    check_k(k, 2)?;
    Ok(lens_class_order(p, k)? > p)
}

/// Order of `index * x` for `x` of order `class_order` in a cyclic group.
/// Transfer after inclusion of a central subgroup is multiplication by the
/// index, so this is the order of the image of a class under that composite.
pub fn transfer_inclusion_scalar(subgroup_index: u64, class_order: u64) -> u64 {
    if class_order == 0 {
        return 0;
    }
    class_order / gcd(class_order, subgroup_index)
}

/// `|Omega_5(BD_(p^k,3))| = 9 p^k`, and the group is cyclic.
pub fn bordism_order_metacyclic_d3(p: u64, k: u32) -> Result<AbelianGroup> {
    PrimeModulus::at_least(p, 5)?;
    check_k(k, 1)?;
    if p % 3 != 1 {
        return Err(Error::NoSuchGroup(p));
    }
    let order = checked_power(p, k)?
        .checked_mul(9)
        .ok_or_else(|| Error::Overflow(format!("9*{p}^{k}")))?;
    Ok(AbelianGroup::Cyclic(order))
}
