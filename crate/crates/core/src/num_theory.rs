//! Exact modular arithmetic over 64-bit moduli.
//!
//! Everything here is pure. Products go through `u128` so any modulus below
//! `2^64` is safe.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic trial division. Adequate for the moduli this crate targets
/// (well under `10^12`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Same as [`PrimeModulus::new`] but additionally requires `p >= min`.
    pub fn at_least(p: u64, min: u64) -> Result<Self> {
        let prime = Self::new(p)?;
        if p < min {
            return Err(Error::PrimeTooSmall { p, min });
        }
        Ok(prime)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub fn residue(self, value: u64) -> ResidueClass {
        ResidueClass {
            value: value % self.0,
            modulus: self.0,
        }
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An integer reduced into `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self {
            value: value % modulus,
            modulus,
        })
    }

    /// Reduces a signed integer, so `-1` maps to `modulus - 1`.
    pub fn from_signed(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let v = (value as i128).rem_euclid(modulus as i128) as u64;
        Ok(Self { value: v, modulus })
    }

    pub const fn value(self) -> u64 {
        self.value
    }

    pub const fn modulus(self) -> u64 {
        self.modulus
    }

    pub const fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Self::new(1, modulus)
    }

    fn same_modulus(self, other: Self) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let m = self.same_modulus(other)?;
        let v = ((self.value as u128 + other.value as u128) % m as u128) as u64;
        Ok(Self {
            value: v,
            modulus: m,
        })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let m = self.same_modulus(other)?;
        let v = ((self.value as u128 + m as u128 - other.value as u128) % m as u128) as u64;
        Ok(Self {
            value: v,
            modulus: m,
        })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let m = self.same_modulus(other)?;
        Ok(Self {
            value: mul_mod(self.value, other.value, m),
            modulus: m,
        })
    }

    pub fn square(self) -> Self {
        Self {
            value: mul_mod(self.value, self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }
}

impl std::ops::Neg for ResidueClass {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// `base^exp` in the residue ring of `base`. `exp = 0` gives 1, also for a
/// zero base.
pub fn mod_pow(base: ResidueClass, exp: u64) -> ResidueClass {
    ResidueClass {
        value: pow_mod(base.value, exp, base.modulus),
        modulus: base.modulus,
    }
}

/// Multiplicative inverse via the extended Euclidean algorithm; works for any
/// modulus, not only primes.
pub fn mod_inverse(a: ResidueClass) -> Result<ResidueClass> {
    let m = a.modulus as i128;
    let (mut old_r, mut r) = (a.value as i128, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotAUnit {
            value: a.value,
            modulus: a.modulus,
        });
    }
    Ok(ResidueClass {
        value: old_s.rem_euclid(m) as u64,
        modulus: a.modulus,
    })
}

/// Euler's criterion: `a^((p-1)/2) == 1`.
///
/// Zero is rejected; callers decide what zero means in their context.
pub fn is_quadratic_residue(a: ResidueClass, p: PrimeModulus) -> Result<bool> {
    if a.modulus != p.get() {
        return Err(Error::ModulusMismatch(a.modulus, p.get()));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.get() == 2 {
        return Ok(true);
    }
    Ok(pow_mod(a.value, (p.get() - 1) / 2, p.get()) == 1)
}

/// Primes in `[lo, hi]`, ascending, by a sieve of Eratosthenes.
pub fn primes_in_range(lo: u64, hi: u64) -> Result<Vec<PrimeModulus>> {
    if lo < 2 || lo > hi {
        return Err(Error::RangeError { lo, hi });
    }
    let hi_us = usize::try_from(hi).map_err(|_| Error::RangeError { lo, hi })?;
    let mut composite = vec![false; hi_us + 1];
    let mut i = 2usize;
    while i * i <= hi_us {
        if !composite[i] {
            let mut j = i * i;
            while j <= hi_us {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    Ok((lo as usize..=hi_us)
        .filter(|&n| !composite[n])
        .map(|n| PrimeModulus(n as u64))
        .collect())
}

/// Square-root table for the units of `Z/p`: `root[s]` is the smaller of the
/// two roots of `s`, or 0 when `s` is not a nonzero square.
pub(crate) struct UnitRoots {
    p: u64,
    root: Vec<u64>,
}

impl UnitRoots {
    pub(crate) fn new(p: PrimeModulus) -> Self {
        let p = p.get();
        let mut root = vec![0u64; p as usize];
        for t in (1..p).rev() {
            root[mul_mod(t, t, p) as usize] = t;
        }
        Self { p, root }
    }

    /// Least `t >= floor` with `t^2 == s`, if any.
    fn least_root_at_least(&self, s: u64, floor: u64) -> Option<u64> {
        let x = self.root[s as usize];
        if x == 0 {
            return None;
        }
        let y = self.p - x;
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        [lo, hi].into_iter().find(|&t| t >= floor)
    }

    /// Lexicographically least sorted triple of units whose squares sum to
    /// `target`.
    pub(crate) fn three_squares(&self, target: u64) -> Option<[u64; 3]> {
        let p = self.p;
        for t1 in 1..p {
            let s1 = mul_mod(t1, t1, p);
            for t2 in t1..p {
                let s2 = (s1 + mul_mod(t2, t2, p)) % p;
                let rest = (target % p + p - s2) % p;
                if let Some(t3) = self.least_root_at_least(rest, t2) {
                    return Some([t1, t2, t3]);
                }
            }
        }
        None
    }
}

/// Lexicographically least sorted triple `(t1, t2, t3)` of units mod `p`
/// with `t1^2 + t2^2 + t3^2 == target`, or `None` if there is none.
pub fn sum_three_unit_squares(target: ResidueClass, p: PrimeModulus) -> Result<Option<[u64; 3]>> {
    if target.modulus != p.get() {
        return Err(Error::ModulusMismatch(target.modulus, p.get()));
    }
    Ok(UnitRoots::new(p).three_squares(target.value))
}
