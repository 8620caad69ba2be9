//! Metacyclic presentations `<x, y | x^m = y^n = 1, y x y^-1 = x^r>` with
//! `gcd((r-1) n, m) = 1` and `r^n == 1 (mod m)`. For odd order these are the
//! groups with periodic cohomology.
//!
//! Enumeration deduplicates by `(m, n, <r>)`, where `<r>` is the subgroup of
//! `(Z/m)^*` generated by `r`. That key is deterministic but it is not a
//! complete isomorphism invariant.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num_theory::{gcd, pow_mod, PrimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationDefect {
    /// `m` or `n` is zero, or `r` is outside `[0, m)` (`r = 0` when `m = 1`).
    OutOfRange,
    /// `gcd((r-1) n, m) != 1`.
    Gcd,
    /// `r^n != 1 (mod m)`.
    Power,
}

impl fmt::Display for PresentationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationDefect::OutOfRange => "parameter out of range",
            PresentationDefect::Gcd => "gcd((r-1)n, m) != 1",
            PresentationDefect::Power => "r^n != 1 mod m",
        })
    }
}

/// Checks a presentation triple. For `m = 1` both congruences hold
/// vacuously and `r` must be 0.
pub fn validate_metacyclic(m: u64, n: u64, r: u64) -> Result<(), PresentationDefect> {
    if m == 0 || n == 0 {
        return Err(PresentationDefect::OutOfRange);
    }
    if m == 1 {
        return if r == 0 {
            Ok(())
        } else {
            Err(PresentationDefect::OutOfRange)
        };
    }
    if r >= m {
        return Err(PresentationDefect::OutOfRange);
    }
    // (r - 1) n mod m, with r - 1 taken mod m so r = 0 is handled.
    let twist = ((r + m - 1) % m) as u128 * n as u128 % m as u128;
    if gcd(twist as u64, m) != 1 {
        return Err(PresentationDefect::Gcd);
    }
    if pow_mod(r, n, m) != 1 {
        return Err(PresentationDefect::Power);
    }
    Ok(())
}

/// A validated presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MetacyclicParams {
    m: u64,
    n: u64,
    r: u64,
}

impl MetacyclicParams {
    pub fn new(m: u64, n: u64, r: u64) -> Result<Self> {
        validate_metacyclic(m, n, r).map_err(|defect| Error::InvalidPresentation {
            m,
            n,
            r,
            defect,
        })?;
        Ok(Self { m, n, r })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(1, n, 0)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn is_cyclic(&self) -> bool {
        self.m == 1
    }
}

impl fmt::Display for MetacyclicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.n, self.r)
    }
}

pub fn group_order(params: &MetacyclicParams) -> u64 {
    params.m * params.n
}

/// Odd order, not divisible by 9.
pub fn theorem1_applies(params: &MetacyclicParams) -> bool {
    let order = group_order(params);
    order % 2 == 1 && !order.is_multiple_of(9)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowShape {
    Cyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowSubgroup {
    pub prime: u64,
    pub order: u64,
    pub shape: SylowShape,
}

pub type SylowDescriptor = Vec<SylowSubgroup>;

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sylow subgroups by ascending prime. The gcd condition forces
/// `gcd(m, n) = 1`, so each Sylow subgroup sits inside `<x>` or `<y>` and is
/// cyclic.
pub fn sylow_structure(params: &MetacyclicParams) -> Result<SylowDescriptor> {
    let order = group_order(params);
    if order.is_multiple_of(2) {
        return Err(Error::EvenOrder(order));
    }
    Ok(factorize(order)
        .into_iter()
        .map(|(prime, e)| SylowSubgroup {
            prime,
            order: prime.pow(e),
            shape: SylowShape::Cyclic,
        })
        .collect())
}

/// `(p^k, 3, r)` with `r` the least primitive cube root of unity mod `p^k`.
pub fn d_pk3_params(p: u64, k: u32) -> Result<MetacyclicParams> {
    PrimeModulus::at_least(p, 5)?;
    if k == 0 {
        return Err(Error::ExponentTooSmall { k, min: 1 });
    }
    if p % 3 != 1 {
        return Err(Error::NoPrimitiveCubeRoot { p, k });
    }
    let m = p
        .checked_pow(k)
        .ok_or_else(|| Error::Overflow(format!("{p}^{k}")))?;
    // phi(m) = p^(k-1) (p-1) is divisible by 3, so a^(phi/3) is a cube root
    // of unity; the first one that is not 1 gives both nontrivial roots.
    let phi = m / p * (p - 1);
    let omega = (2..m)
        .filter(|&a| a % p != 0)
        .map(|a| pow_mod(a, phi / 3, m))
        .find(|&w| w != 1)
        .expect("the unit group mod p^k is cyclic of order divisible by 3");
    let other = crate::num_theory::mul_mod(omega, omega, m);
    MetacyclicParams::new(m, 3, omega.min(other))
}

/// Sorted elements of the cyclic subgroup of `(Z/m)^*` generated by `r`.
fn generated_subgroup(r: u64, m: u64) -> Vec<u64> {
    let mut out = vec![1 % m];
    let mut x = r % m;
    while x != 1 % m {
        out.push(x);
        x = crate::num_theory::mul_mod(x, r, m);
    }
    out.sort_unstable();
    out
}

/// Every valid odd-order presentation with `m n <= max_order`, one per
/// `(m, n, <r>)` key (least `r` kept), sorted by `(order, m, n, r)`.
pub fn enumerate_periodic_odd(max_order: u64) -> Vec<MetacyclicParams> {
    let mut out = Vec::new();
    for order in (1..=max_order).step_by(2) {
        for m in (1..=order).filter(|m| order % m == 0) {
            let n = order / m;
            if m == 1 {
                out.push(MetacyclicParams { m: 1, n, r: 0 });
                continue;
            }
            if gcd(m, n) != 1 {
                continue;
            }
            let mut seen = HashSet::new();
            for r in 2..m {
                if validate_metacyclic(m, n, r).is_ok() && seen.insert(generated_subgroup(r, m)) {
                    out.push(MetacyclicParams { m, n, r });
                }
            }
        }
    }
    out
}
