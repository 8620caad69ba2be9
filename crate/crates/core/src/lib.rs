//! Mod-p Pontrjagin invariants of 5-dimensional lens spaces, order
//! bookkeeping for 5-dimensional spin bordism of cyclic and `D_(p^k,3)`
//! groups, and the metacyclic presentations of odd-order periodic groups.
//!
//! - [`num_theory`]: modular arithmetic, quadratic residues, prime ranges,
//!   sums of three unit squares.
//! - [`lens_invariants`]: Pontrjagin pairs, reparametrization orbits, the
//!   independence criterion and the generator-pair search.
//! - [`bordism_orders`]: spectral sequence and extension order formulas.
//! - [`periodic_groups`]: presentation validation, Sylow data, enumeration.

pub mod bordism_orders;
pub mod error;
pub mod lens_invariants;
pub mod num_theory;
pub mod periodic_groups;

pub use bordism_orders::{AbelianGroup, E2Diagonal, E2Term};
pub use error::{Error, Result};
pub use lens_invariants::{
    canonical_form, find_generator_pair, independent, independent_bruteforce, is_null_bordant,
    pontrjagin_pair, q_sum, reparametrize, GeneratorPairResult, LensSpace, Outcome, PontrjaginPair,
    Stage, TraceStep,
};
pub use num_theory::{PrimeModulus, ResidueClass};
pub use periodic_groups::{MetacyclicParams, PresentationDefect, SylowDescriptor, SylowSubgroup};
