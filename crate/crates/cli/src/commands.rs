//! One builder per subcommand. Builders return typed reports so tests can
//! inspect them without going through a process.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use spinlens_core::bordism_orders::{
    bordism_order_cyclic, bordism_order_metacyclic_d3, e2_diagonal, extension_order_check,
    group_structure_cyclic, lens_class_order, non_splitness_witness,
};
use spinlens_core::lens_invariants::orbit_size;
use spinlens_core::num_theory::primes_in_range;
use spinlens_core::periodic_groups::{
    d_pk3_params, enumerate_periodic_odd, group_order, sylow_structure, theorem1_applies,
};
use spinlens_core::{
    canonical_form, find_generator_pair, independent, independent_bruteforce, pontrjagin_pair,
    Error, LensSpace, PrimeModulus, Stage, SylowSubgroup, TraceStep,
};

use crate::report::{triple, Report, Row};

/// Failure classes, mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or inputs; exit 2.
    #[error("{0}")]
    Usage(String),
    /// Anything else that stops a report from being produced.
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Other(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// lemma5

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Params {
    pub range: (u64, u64),
    pub brute_below: u64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Entry {
    pub p: u64,
    pub weights_a: [u64; 3],
    pub weights_b: [u64; 3],
    pub Q: u64,
    pub R: u64,
    pub stage: Stage,
    pub certificate: u64,
    pub brute_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Summary {
    pub primes_checked: u64,
    pub failures: u64,
}

impl fmt::Display for Lemma5Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "primes_checked={} failures={}",
            self.primes_checked, self.failures
        )
    }
}

impl Row for Lemma5Entry {
    fn header() -> &'static [&'static str] {
        &[
            "p",
            "weights_a",
            "weights_b",
            "Q",
            "R",
            "stage",
            "certificate",
            "brute_checked",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            triple(self.weights_a),
            triple(self.weights_b),
            self.Q.to_string(),
            self.R.to_string(),
            self.stage.to_string(),
            self.certificate.to_string(),
            self.brute_checked.to_string(),
        ]
    }
}

/// Full state for a prime that failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: u64,
    pub reason: String,
    pub trace: Vec<TraceStep>,
}

pub type Lemma5Report = Report<Lemma5Params, Lemma5Entry, Lemma5Summary>;

fn verify_prime(p: PrimeModulus, brute_below: u64) -> Result<Lemma5Entry, Counterexample> {
    let found = match find_generator_pair(p) {
        Ok(found) => found,
        Err(Error::SearchExhausted { trace, .. }) => {
            return Err(Counterexample {
                p: p.get(),
                reason: "search exhausted".into(),
                trace: *trace,
            })
        }
        Err(e) => {
            return Err(Counterexample {
                p: p.get(),
                reason: e.to_string(),
                trace: Vec::new(),
            })
        }
    };
    let fail = |reason: String| Counterexample {
        p: p.get(),
        reason,
        trace: found.proof_trace.clone(),
    };
    let (a, b) = (
        pontrjagin_pair(&found.first),
        pontrjagin_pair(&found.second),
    );
    match independent(&a, &b) {
        Ok(true) => {}
        Ok(false) => return Err(fail("returned pair is dependent".into())),
        Err(e) => return Err(fail(e.to_string())),
    }
    let brute_checked = p.get() <= brute_below;
    if brute_checked {
        match independent_bruteforce(&a, &b) {
            Ok(true) => {}
            Ok(false) => return Err(fail("brute-force oracle finds a dependency".into())),
            Err(e) => return Err(fail(e.to_string())),
        }
    }
    Ok(Lemma5Entry {
        p: p.get(),
        weights_a: found.first.weights(),
        weights_b: found.second.weights(),
        Q: found.q.value(),
        R: found.r.value(),
        stage: found.stage,
        certificate: found.certificate(),
        brute_checked,
    })
}

/// Runs the generator-pair search for every prime in `[min, max]` in
/// parallel. Results come back in ascending prime order.
pub fn lemma5(
    min: u64,
    max: u64,
    brute_below: u64,
) -> Result<(Lemma5Report, Vec<Counterexample>), CliError> {
    if min < 5 || min > max {
        return Err(CliError::Usage(format!(
            "need 5 <= --min <= --max, got [{min}, {max}]"
        )));
    }
    let primes = primes_in_range(min, max)?;
    let results: Vec<Result<Lemma5Entry, Counterexample>> = primes
        .par_iter()
        .map(|&p| verify_prime(p, brute_below))
        .collect();
    let mut entries = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(c) => failures.push(c),
        }
    }
    let summary = Lemma5Summary {
        primes_checked: primes.len() as u64,
        failures: failures.len() as u64,
    };
    let report = Report::new(
        "lemma5",
        Lemma5Params {
            range: (min, max),
            brute_below,
        },
        entries,
        summary,
    );
    Ok((report, failures))
}

// ---------------------------------------------------------------------------
// invariants

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    pub count: u64,
    pub failures: u64,
}

impl fmt::Display for CountSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "count={} failures={}", self.count, self.failures)
    }
}

impl CountSummary {
    fn of(count: usize) -> Self {
        Self {
            count: count as u64,
            failures: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensParams {
    pub p: u64,
    pub q: [u64; 3],
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsEntry {
    pub p: u64,
    pub weights: [u64; 3],
    pub Q: u64,
    pub pair: (u64, u64),
    pub canonical: (u64, u64),
    pub orbit_size: u64,
}

impl Row for InvariantsEntry {
    fn header() -> &'static [&'static str] {
        &["p", "weights", "Q", "pair", "canonical", "orbit_size"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            triple(self.weights),
            self.Q.to_string(),
            format!("{},{}", self.pair.0, self.pair.1),
            format!("{},{}", self.canonical.0, self.canonical.1),
            self.orbit_size.to_string(),
        ]
    }
}

pub type InvariantsReport = Report<LensParams, InvariantsEntry, CountSummary>;

fn odd_prime(p: u64) -> Result<PrimeModulus, CliError> {
    if p == 2 {
        return Err(CliError::Usage("p must be an odd prime".into()));
    }
    Ok(PrimeModulus::new(p)?)
}

fn lens_space(p: PrimeModulus, q: [u64; 3]) -> Result<LensSpace, CliError> {
    LensSpace::new(p, q)
        .map_err(|e| CliError::Usage(format!("weights {}: {e} (action is not free)", triple(q))))
}

pub fn invariants(p: u64, q: [u64; 3]) -> Result<InvariantsReport, CliError> {
    let prime = odd_prime(p)?;
    let lens = lens_space(prime, q)?;
    let pair = pontrjagin_pair(&lens);
    let entry = InvariantsEntry {
        p,
        weights: lens.weights(),
        Q: pair.beta1.value(),
        pair: pair.values(),
        canonical: canonical_form(pair).values(),
        orbit_size: orbit_size(pair) as u64,
    };
    Ok(Report::new(
        "invariants",
        LensParams { p, q },
        vec![entry],
        CountSummary::of(1),
    ))
}

// ---------------------------------------------------------------------------
// independent

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentParams {
    pub p: u64,
    pub qa: [u64; 3],
    pub qb: [u64; 3],
    pub brute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Independent,
    Dependent,
}

impl Verdict {
    fn of(b: bool) -> Self {
        if b {
            Verdict::Independent
        } else {
            Verdict::Dependent
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Independent => "independent",
            Verdict::Dependent => "dependent",
        })
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentEntry {
    pub p: u64,
    pub weights_a: [u64; 3],
    pub weights_b: [u64; 3],
    pub Q: u64,
    pub R: u64,
    pub verdict: Verdict,
    pub oracle: Option<Verdict>,
}

impl Row for IndependentEntry {
    fn header() -> &'static [&'static str] {
        &["p", "weights_a", "weights_b", "Q", "R", "verdict", "oracle"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            triple(self.weights_a),
            triple(self.weights_b),
            self.Q.to_string(),
            self.R.to_string(),
            self.verdict.to_string(),
            self.oracle
                .map_or_else(|| "-".to_string(), |v| v.to_string()),
        ]
    }
}

pub type IndependentReport = Report<IndependentParams, IndependentEntry, CountSummary>;

/// The summary counts one failure when the oracle disagrees.
pub fn independent_cmd(
    p: u64,
    qa: [u64; 3],
    qb: [u64; 3],
    brute: bool,
) -> Result<IndependentReport, CliError> {
    let prime = odd_prime(p)?;
    if p < 5 {
        return Err(CliError::Usage("independence needs p >= 5".into()));
    }
    let (la, lb) = (lens_space(prime, qa)?, lens_space(prime, qb)?);
    let (a, b) = (pontrjagin_pair(&la), pontrjagin_pair(&lb));
    let verdict = Verdict::of(independent(&a, &b)?);
    let oracle = if brute {
        Some(Verdict::of(independent_bruteforce(&a, &b)?))
    } else {
        None
    };
    let disagreements = u64::from(oracle.is_some_and(|o| o != verdict));
    let entry = IndependentEntry {
        p,
        weights_a: la.weights(),
        weights_b: lb.weights(),
        Q: a.beta1.value(),
        R: b.beta1.value(),
        verdict,
        oracle,
    };
    Ok(Report::new(
        "independent",
        IndependentParams { p, qa, qb, brute },
        vec![entry],
        CountSummary {
            count: 1,
            failures: disagreements,
        },
    ))
}

// ---------------------------------------------------------------------------
// orders / orders-d3

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderParams {
    pub p: u64,
    pub k: u32,
}

/// A quantity that may be unknown; unknown values are emitted as the string
/// `"unspecified"`, never as a number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(u64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => n.fmt(f),
            Value::Bool(b) => b.fmt(f),
            Value::Text(s) => f.write_str(s),
        }
    }
}

pub const UNSPECIFIED: &str = "unspecified";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderEntry {
    pub quantity: String,
    pub value: Value,
    pub note: String,
}

impl Row for OrderEntry {
    fn header() -> &'static [&'static str] {
        &["quantity", "value", "note"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.quantity.clone(),
            self.value.to_string(),
            self.note.clone(),
        ]
    }
}

pub type OrdersReport = Report<OrderParams, OrderEntry, CountSummary>;

fn row(quantity: &str, value: Value, note: impl Into<String>) -> OrderEntry {
    OrderEntry {
        quantity: quantity.to_string(),
        value,
        note: note.into(),
    }
}

/// Unspecified results become rows; any other library error aborts.
fn known<T>(
    r: spinlens_core::Result<T>,
    f: impl FnOnce(T) -> Value,
) -> Result<(Value, String), CliError> {
    match r {
        Ok(v) => Ok((f(v), String::new())),
        Err(Error::Unspecified(why)) => Ok((Value::Text(UNSPECIFIED.into()), why)),
        Err(e) => Err(e.into()),
    }
}

pub fn orders(p: u64, k: u32) -> Result<OrdersReport, CliError> {
    odd_prime(p)?;
    if k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let mut entries = Vec::new();
    let order = bordism_order_cyclic(p, k)?;
    entries.push(row(
        "bordism_order",
        Value::Int(order),
        format!("{p}^{}", 2 * k),
    ));
    let n = p
        .checked_pow(k)
        .ok_or_else(|| CliError::Usage(format!("{p}^{k} overflows")))?;
    let e2 = e2_diagonal(n)?;
    let nonzero: Vec<String> = e2
        .terms
        .iter()
        .filter(|t| t.order > 1)
        .map(|t| format!("E2({},{})={}", t.r, t.s, t.order))
        .collect();
    entries.push(row(
        "e2_product",
        Value::Int(e2.total_order()?),
        nonzero.join(" "),
    ));
    let (v, note) = known(group_structure_cyclic(p, k), |g| Value::Text(g.to_string()))?;
    entries.push(row("group_structure", v, note));
    let (v, note) = known(lens_class_order(p, k), Value::Int)?;
    entries.push(row("lens_class_order", v, note));
    if k >= 2 {
        if p >= 5 {
            entries.push(row(
                "extension_check",
                Value::Bool(extension_order_check(p, k)?),
                "",
            ));
            entries.push(row(
                "non_split",
                Value::Bool(non_splitness_witness(p, k)?),
                "",
            ));
        } else {
            let why = "extension argument requires p >= 5";
            entries.push(row("extension_check", Value::Text(UNSPECIFIED.into()), why));
            entries.push(row("non_split", Value::Text(UNSPECIFIED.into()), why));
        }
    }
    let count = entries.len();
    Ok(Report::new(
        "orders",
        OrderParams { p, k },
        entries,
        CountSummary::of(count),
    ))
}

pub fn orders_d3(p: u64, k: u32) -> Result<OrdersReport, CliError> {
    odd_prime(p)?;
    let params = d_pk3_params(p, k)?;
    let group = bordism_order_metacyclic_d3(p, k)?;
    let order = group.order().expect("finite");
    let lens = lens_class_order(p, k)?;
    let entries = vec![
        row("params", Value::Text(params.to_string()), "(m, n, r)"),
        row("group_order", Value::Int(group_order(&params)), ""),
        row(
            "theorem1_applies",
            Value::Bool(theorem1_applies(&params)),
            "",
        ),
        row("bordism_order", Value::Int(order), format!("9*{p}^{k}")),
        row("cyclic", Value::Bool(group.is_cyclic()), group.to_string()),
        row("lens_class_order", Value::Int(lens), ""),
        row(
            "order_is_9_times_lens_order",
            Value::Bool(lens.checked_mul(9) == Some(order)),
            "",
        ),
    ];
    let count = entries.len();
    Ok(Report::new(
        "orders-d3",
        OrderParams { p, k },
        entries,
        CountSummary::of(count),
    ))
}

// ---------------------------------------------------------------------------
// groups

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupsParams {
    pub max_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub order: u64,
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub cyclic: bool,
    pub sylow: Vec<SylowSubgroup>,
    pub theorem1_applies: bool,
}

impl Row for GroupEntry {
    fn header() -> &'static [&'static str] {
        &[
            "order",
            "m",
            "n",
            "r",
            "cyclic",
            "sylow",
            "theorem1_applies",
        ]
    }

    fn cells(&self) -> Vec<String> {
        let sylow: Vec<String> = self
            .sylow
            .iter()
            .map(|s| format!("{}:{}", s.prime, s.order))
            .collect();
        vec![
            self.order.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.cyclic.to_string(),
            sylow.join(" "),
            self.theorem1_applies.to_string(),
        ]
    }
}

pub type GroupsReport = Report<GroupsParams, GroupEntry, CountSummary>;

pub fn groups(max_order: u64) -> Result<GroupsReport, CliError> {
    if max_order < 1 {
        return Err(CliError::Usage("--max-order must be at least 1".into()));
    }
    let entries = enumerate_periodic_odd(max_order)
        .into_par_iter()
        .map(|g| -> Result<GroupEntry, CliError> {
            Ok(GroupEntry {
                order: group_order(&g),
                m: g.m(),
                n: g.n(),
                r: g.r(),
                cyclic: g.is_cyclic(),
                sylow: sylow_structure(&g)?,
                theorem1_applies: theorem1_applies(&g),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let count = entries.len();
    Ok(Report::new(
        "groups",
        GroupsParams { max_order },
        entries,
        CountSummary::of(count),
    ))
}
