use thiserror::Error;

use crate::lens_invariants::TraceStep;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} is outside the supported range (need p >= {min})")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{value} is not a unit mod {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("residue 0 has no quadratic character")]
    ZeroInput,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("invalid range [{lo}, {hi}]")]
    RangeError { lo: u64, hi: u64 },
    #[error("pair has beta0 = 0 mod {0}; not the invariant of a lens space")]
    DegeneratePair(u64),
    #[error("no independent generator pair found for p = {p} after {} attempts", trace.len())]
    SearchExhausted { p: u64, trace: Box<Vec<TraceStep>> },
    #[error("modulus {0} is even")]
    EvenModulus(u64),
    #[error("{0} is not a power of an odd prime")]
    NotOddPrimePower(u64),
    #[error("exponent k must be at least {min}, got {k}")]
    ExponentTooSmall { k: u32, min: u32 },
    #[error("integer overflow computing {0}")]
    Overflow(String),
    #[error("not determined by the available results: {0}")]
    Unspecified(String),
    #[error("D_(p^k,3) does not exist for p = {0}: p is not 1 mod 3")]
    NoSuchGroup(u64),
    #[error("no primitive cube root of unity mod {p}^{k}")]
    NoPrimitiveCubeRoot { p: u64, k: u32 },
    #[error("order {0} is even; generalized quaternion Sylow subgroups are not handled")]
    EvenOrder(u64),
    #[error("invalid metacyclic presentation ({m}, {n}, {r}): {defect}")]
    InvalidPresentation {
        m: u64,
        n: u64,
        r: u64,
        defect: crate::periodic_groups::PresentationDefect,
    },
}
