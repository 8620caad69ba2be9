//! Mod-p Pontrjagin pairs of 5-dimensional lens spaces `L^5_p(q1, q2, q3)`.
//!
//! For a free `Z/p` action with unit weights `q1, q2, q3` the first
//! Pontrjagin class is `(q1^2 + q2^2 + q3^2) d2^2`, so the pair of mod-p
//! Pontrjagin numbers is `(b0, Q b0)` with `b0 = <d1 d2^2, [L]>` nonzero.
//! Changing the chosen generator of the group rescales the pair as
//! `(b0, b1) ~ (k^3 b0, k b1)`. We fix the classifying map so that `b0 = 1`
//! and expose the rest of the orbit through [`canonical_form`].
//!
//! Two lens classes are linearly independent over `Z/p` for every choice of
//! classifying maps exactly when `R k^2 == Q` has no unit solution `k`.
//! [`find_generator_pair`] searches for such a pair with a staged procedure
//! and falls back to an exhaustive scan.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num_theory::{
    is_quadratic_residue, mod_inverse, mod_pow, PrimeModulus, ResidueClass, UnitRoots,
};

/// `L^5_p(q1, q2, q3)` with unit weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LensSpace {
    p: PrimeModulus,
    weights: [ResidueClass; 3],
}

impl LensSpace {
    /// Weights are reduced mod `p`; any weight divisible by `p` would give a
    /// non-free action and is rejected.
    pub fn new(p: PrimeModulus, weights: [u64; 3]) -> Result<Self> {
        if p.get() < 3 {
            return Err(Error::PrimeTooSmall { p: p.get(), min: 3 });
        }
        let weights = weights.map(|q| p.residue(q));
        if let Some(bad) = weights.iter().find(|w| w.is_zero()) {
            return Err(Error::NotAUnit {
                value: bad.value(),
                modulus: p.get(),
            });
        }
        Ok(Self { p, weights })
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn weights(&self) -> [u64; 3] {
        self.weights.map(ResidueClass::value)
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights();
        write!(f, "L_{}({a},{b},{c})", self.p)
    }
}

/// `(b0, b1)` mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PontrjaginPair {
    pub beta0: ResidueClass,
    pub beta1: ResidueClass,
}

impl PontrjaginPair {
    pub fn new(beta0: ResidueClass, beta1: ResidueClass) -> Result<Self> {
        if beta0.modulus() != beta1.modulus() {
            return Err(Error::ModulusMismatch(beta0.modulus(), beta1.modulus()));
        }
        Ok(Self { beta0, beta1 })
    }

    pub fn from_values(beta0: u64, beta1: u64, p: PrimeModulus) -> Self {
        Self {
            beta0: p.residue(beta0),
            beta1: p.residue(beta1),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.beta0.modulus()
    }

    pub fn values(&self) -> (u64, u64) {
        (self.beta0.value(), self.beta1.value())
    }

    /// `b1 / b0`, the weight-square sum `Q` of a lens class.
    pub fn ratio(&self) -> Result<ResidueClass> {
        let inv = mod_inverse(self.beta0).map_err(|_| Error::DegeneratePair(self.modulus()))?;
        self.beta1.checked_mul(inv)
    }
}

impl fmt::Display for PontrjaginPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) mod {}",
            self.beta0.value(),
            self.beta1.value(),
            self.modulus()
        )
    }
}

/// `Q = q1^2 + q2^2 + q3^2` mod p.
pub fn q_sum(lens: &LensSpace) -> ResidueClass {
    let p = lens.p.get();
    let s = lens
        .weights
        .iter()
        .map(|w| w.square().value())
        .fold(0u64, |acc, v| (acc + v) % p);
    lens.p.residue(s)
}

/// The pair `(1, Q)`: the classifying map is normalized so that `b0 = 1`.
pub fn pontrjagin_pair(lens: &LensSpace) -> PontrjaginPair {
    PontrjaginPair {
        beta0: lens.p.residue(1),
        beta1: q_sum(lens),
    }
}

/// `(b0, b1) -> (k^3 b0, k b1)`.
pub fn reparametrize(pair: PontrjaginPair, k: ResidueClass) -> Result<PontrjaginPair> {
    if k.modulus() != pair.modulus() {
        return Err(Error::ModulusMismatch(pair.modulus(), k.modulus()));
    }
    if !k.is_unit() {
        return Err(Error::NotAUnit {
            value: k.value(),
            modulus: k.modulus(),
        });
    }
    Ok(PontrjaginPair {
        beta0: mod_pow(k, 3).checked_mul(pair.beta0)?,
        beta1: k.checked_mul(pair.beta1)?,
    })
}

fn orbit(pair: PontrjaginPair) -> impl Iterator<Item = PontrjaginPair> {
    let m = pair.modulus();
    (1..m).filter_map(move |k| reparametrize(pair, ResidueClass::new(k, m).ok()?).ok())
}

/// Lexicographically least `(b0, b1)` in the reparametrization orbit.
pub fn canonical_form(pair: PontrjaginPair) -> PontrjaginPair {
    orbit(pair).min_by_key(|x| x.values()).unwrap_or(pair)
}

/// Number of distinct pairs in the reparametrization orbit.
pub fn orbit_size(pair: PontrjaginPair) -> usize {
    let mut seen: Vec<(u64, u64)> = orbit(pair).map(|x| x.values()).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len().max(1)
}

/// A class vanishes iff both mod-p Pontrjagin numbers vanish.
pub fn is_null_bordant(pair: &PontrjaginPair) -> bool {
    pair.beta0.is_zero() && pair.beta1.is_zero()
}

fn ratios(
    a: &PontrjaginPair,
    b: &PontrjaginPair,
) -> Result<(PrimeModulus, ResidueClass, ResidueClass)> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    let p = PrimeModulus::at_least(a.modulus(), 5)?;
    Ok((p, a.ratio()?, b.ratio()?))
}

/// True iff `R k^2 == Q` has no unit solution, where `Q` and `R` are the
/// ratios `b1 / b0` of `a` and `b`.
pub fn independent(a: &PontrjaginPair, b: &PontrjaginPair) -> Result<bool> {
    let (p, q, r) = ratios(a, b)?;
    criterion(p, q, r)
}

fn criterion(p: PrimeModulus, q: ResidueClass, r: ResidueClass) -> Result<bool> {
    match (q.is_zero(), r.is_zero()) {
        (true, true) => Ok(false),
        (true, false) | (false, true) => Ok(true),
        (false, false) => {
            let quotient = q.checked_mul(mod_inverse(r)?)?;
            Ok(!is_quadratic_residue(quotient, p)?)
        }
    }
}

/// Brute-force form of [`independent`]: searches all unit `(a, b, k, l)` for
/// `a (k^3, k Q) + b (l^3, l R) == (0, 0)`. Cost is `(p-1)^4`; meant for
/// small primes.
pub fn independent_bruteforce(a: &PontrjaginPair, b: &PontrjaginPair) -> Result<bool> {
    let (p, q, r) = ratios(a, b)?;
    let m = p.get();
    let (q, r) = (q.value(), r.value());
    for k in 1..m {
        let k3 = k * k % m * k % m;
        let kq = k * q % m;
        for l in 1..m {
            let l3 = l * l % m * l % m;
            let lr = l * r % m;
            for x in 1..m {
                let (u0, u1) = (x * k3 % m, x * kq % m);
                for y in 1..m {
                    if (u0 + y * l3) % m == 0 && (u1 + y * lr) % m == 0 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Which part of the search produced the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    /// `Q = 3`, `R = 6`.
    #[serde(rename = "i")]
    Initial,
    /// `Q = 3`, `R = 2`.
    #[serde(rename = "ii")]
    SwapR,
    /// `Q = 1 + j^2`, `R = 2` for `j = 2, 3, ...`.
    #[serde(rename = "iii")]
    Iterate,
    /// `Q = 0` paired with a nonzero `R`.
    #[serde(rename = "iv")]
    ZeroQ,
    /// Exhaustive scan over all realizable `(Q, R)`.
    #[serde(rename = "fallback")]
    Exhaustive,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Initial => "i",
            Stage::SwapR => "ii",
            Stage::Iterate => "iii",
            Stage::ZeroQ => "iv",
            Stage::Exhaustive => "fallback",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Independent,
    Dependent,
    /// One of the values is not a sum of three unit squares.
    Unrealizable,
}

/// One attempted `(Q, R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub stage: Stage,
    pub q: u64,
    pub r: u64,
    /// `Q R^-1` when both are nonzero: the residue whose quadratic character
    /// decides the step.
    pub quotient: Option<u64>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPairResult {
    pub p: PrimeModulus,
    pub first: LensSpace,
    pub second: LensSpace,
    pub q: ResidueClass,
    pub r: ResidueClass,
    pub stage: Stage,
    pub proof_trace: Vec<TraceStep>,
}

impl GeneratorPairResult {
    /// The residue certifying independence: the non-residue `Q R^-1`, or 0
    /// when one side vanishes.
    pub fn certificate(&self) -> u64 {
        self.proof_trace
            .last()
            .and_then(|s| s.quotient)
            .unwrap_or(0)
    }
}

struct Search {
    p: PrimeModulus,
    roots: UnitRoots,
    trace: Vec<TraceStep>,
}

impl Search {
    fn attempt(&mut self, stage: Stage, q: u64, r: u64) -> Result<Option<GeneratorPairResult>> {
        let p = self.p;
        let (qc, rc) = (p.residue(q), p.residue(r));
        let quotient = if qc.is_zero() || rc.is_zero() {
            None
        } else {
            Some(qc.checked_mul(mod_inverse(rc)?)?.value())
        };
        let realized = self
            .roots
            .three_squares(qc.value())
            .zip(self.roots.three_squares(rc.value()));
        let Some((wq, wr)) = realized else {
            self.trace.push(TraceStep {
                stage,
                q: qc.value(),
                r: rc.value(),
                quotient,
                outcome: Outcome::Unrealizable,
            });
            return Ok(None);
        };
        let first = LensSpace::new(p, wq)?;
        let second = LensSpace::new(p, wr)?;
        let ok = independent(&pontrjagin_pair(&first), &pontrjagin_pair(&second))?;
        let outcome = if ok {
            Outcome::Independent
        } else {
            Outcome::Dependent
        };
        self.trace.push(TraceStep {
            stage,
            q: qc.value(),
            r: rc.value(),
            quotient,
            outcome,
        });
        Ok(ok.then(|| GeneratorPairResult {
            p,
            first,
            second,
            q: qc,
            r: rc,
            stage,
            proof_trace: std::mem::take(&mut self.trace),
        }))
    }
}

/// Two lens spaces whose classes are independent for every choice of
/// classifying maps, so together they generate the reduced spin bordism
/// group of `BZ/p` in dimension 5.
///
/// Stages, in order: `(Q, R) = (3, 6)`; `(3, 2)`; `(1 + j^2, 2)` for
/// `j = 2 ..= (p-1)/2`, switching to `(0, 2)` if `1 + j^2` vanishes; then an
/// exhaustive scan. Every value is realized by the least unit triple from
/// [`crate::num_theory::sum_three_unit_squares`].
pub fn find_generator_pair(p: PrimeModulus) -> Result<GeneratorPairResult> {
    let p = PrimeModulus::at_least(p.get(), 5)?;
    let pv = p.get();
    let mut search = Search {
        p,
        roots: UnitRoots::new(p),
        trace: Vec::new(),
    };

    if let Some(found) = search.attempt(Stage::Initial, 3, 6)? {
        return Ok(found);
    }
    if let Some(found) = search.attempt(Stage::SwapR, 3, 2)? {
        return Ok(found);
    }
    for j in 2..=(pv - 1) / 2 {
        let q = (1 + j * j) % pv;
        let hit = if q == 0 {
            search.attempt(Stage::ZeroQ, 0, 2)?
        } else {
            search.attempt(Stage::Iterate, q, 2)?
        };
        if let Some(found) = hit {
            return Ok(found);
        }
    }

    let realizable: Vec<u64> = (0..pv)
        .filter(|&v| search.roots.three_squares(v).is_some())
        .collect();
    for &q in &realizable {
        for &r in &realizable {
            if criterion(p, p.residue(q), p.residue(r))? {
                if let Some(found) = search.attempt(Stage::Exhaustive, q, r)? {
                    return Ok(found);
                }
            }
        }
    }
    Err(Error::SearchExhausted {
        p: pv,
        trace: Box::new(search.trace),
    })
}
