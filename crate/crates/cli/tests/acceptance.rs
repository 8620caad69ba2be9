//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line for its
//! criterion. The oracles below are deliberately naive and share no code
//! with the library paths they check.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use spinlens_cli::commands;
use spinlens_cli::report::Format;
use spinlens_core::bordism_orders::{
    bordism_order_cyclic, bordism_order_metacyclic_d3, e2_diagonal, extension_order_check,
    lens_class_order, transfer_inclusion_scalar,
};
use spinlens_core::lens_invariants::orbit_size;
use spinlens_core::num_theory::{is_quadratic_residue, primes_in_range};
use spinlens_core::{
    canonical_form, independent, independent_bruteforce, reparametrize, PontrjaginPair,
    PrimeModulus, ResidueClass, Stage,
};

fn verdict(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] AC{id} {name}: {detail}");
    assert!(ok, "AC{id} {name} failed: {detail}");
}

// --- oracles --------------------------------------------------------------

fn naive_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi)
        .filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn square_table(p: u64) -> HashSet<u64> {
    (1..p).map(|k| k * k % p).collect()
}

/// `R k^2 == Q` for some unit `k`, by scanning every `k`.
fn soluble(q: u64, r: u64, p: u64) -> bool {
    (1..p).any(|k| r * k % p * k % p == q % p)
}

/// All six unknowns of the original congruence pair, units mod `p`.
fn full_dependency(q: u64, r: u64, p: u64) -> bool {
    for b0 in 1..p {
        for b0p in 1..p {
            for k in 1..p {
                for l in 1..p {
                    for a in 1..p {
                        for b in 1..p {
                            let first = (a * (k * k % p * k % p) % p * b0
                                + b * (l * l % p * l % p) % p * b0p)
                                % p;
                            let second = (a * k % p * q % p * b0 + b * l % p * r % p * b0p) % p;
                            if first == 0 && second == 0 {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Double loop over `(m, n, r)` with the two presentation conditions checked
/// by repeated multiplication, deduplicated by the generated subgroup.
fn presentation_scan(max_order: u64) -> BTreeSet<(u64, u64, u64, u64)> {
    let mut out = BTreeSet::new();
    for m in 1..=max_order {
        for n in 1..=max_order / m {
            if (m * n) % 2 == 0 {
                continue;
            }
            if m == 1 {
                out.insert((n, 1, n, 0));
                continue;
            }
            let mut subgroups: Vec<BTreeSet<u64>> = Vec::new();
            for r in 0..m {
                let rn = (0..n).fold(1 % m, |acc, _| acc * r % m);
                let twist = (r + m - 1) % m * n % m;
                if rn != 1 || gcd(twist, m) != 1 {
                    continue;
                }
                let mut sub = BTreeSet::new();
                let mut x = 1 % m;
                loop {
                    sub.insert(x);
                    x = x * r % m;
                    if sub.contains(&x) {
                        break;
                    }
                }
                if !subgroups.contains(&sub) {
                    subgroups.push(sub);
                    out.insert((m * n, m, n, r));
                }
            }
        }
    }
    out
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_spinlens")
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let o = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code().unwrap_or(-1), o.stdout)
}

// --- criteria -------------------------------------------------------------

#[test]
fn ac1_lemma5_range_to_10000() {
    let start = Instant::now();
    let (code, out) = run(&["lemma5", "--min", "5", "--max", "10000", "--format", "json"]);
    let elapsed = start.elapsed();
    let report: commands::Lemma5Report = serde_json::from_slice(&out).unwrap();

    let expected = naive_primes(5, 10_000);
    let got: Vec<u64> = report.entries.iter().map(|e| e.p).collect();
    let mut reverified = 0usize;
    for e in &report.entries {
        let sq = |w: [u64; 3]| w.iter().map(|x| x * x).sum::<u64>() % e.p;
        let units = e
            .weights_a
            .iter()
            .chain(&e.weights_b)
            .all(|&w| w % e.p != 0);
        if units
            && sq(e.weights_a) == e.Q
            && sq(e.weights_b) == e.R
            && !soluble(e.Q, e.R, e.p)
            && !(e.Q == 0 && e.R == 0)
        {
            reverified += 1;
        }
    }
    let ok = code == 0
        && report.summary.failures == 0
        && got == expected
        && reverified == expected.len()
        && elapsed < Duration::from_secs(60);
    verdict(
        1,
        "lemma5 --min 5 --max 10000",
        ok,
        &format!(
            "exit={code} failures={} entries={} primes_in_range={} reverified={reverified} elapsed={:.2?}",
            report.summary.failures,
            got.len(),
            expected.len(),
            elapsed
        ),
    );
}

#[test]
fn ac2_p5_instance() {
    let (report, _) = commands::lemma5(5, 5, 31).unwrap();
    let e = &report.entries[0];
    let ok = e.p == 5
        && e.stage == Stage::Initial
        && e.Q == 3
        && e.R == 6 % 5
        && e.weights_a == [1, 1, 1]
        && e.weights_b == [1, 1, 2]
        && e.brute_checked;
    verdict(
        2,
        "p=5 uses stage (i), Q=3, R=6 (mod 5), weights (1,1,1)/(1,1,2)",
        ok,
        &format!(
            "stage={} Q={} R={} a={:?} b={:?}",
            e.stage, e.Q, e.R, e.weights_a, e.weights_b
        ),
    );
}

#[test]
fn ac3_oracle_equivalence() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut cases = 0usize;
    for p in primes_in_range(5, 31).unwrap() {
        let pv = p.get();
        for q in 0..pv {
            for r in 0..pv {
                let a = PontrjaginPair::from_values(1, q, p);
                let b = PontrjaginPair::from_values(1, r, p);
                let fast = independent(&a, &b).unwrap();
                let brute = independent_bruteforce(&a, &b).unwrap();
                let scan = !soluble(q, r, pv);
                cases += 1;
                if fast != brute {
                    mismatches.push((pv, q, r, "normalized"));
                }
                if pv <= 11 && fast != !full_dependency(q, r, pv) {
                    mismatches.push((pv, q, r, "full"));
                }
                if fast != scan {
                    mismatches.push((pv, q, r, "scan"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        "independent == brute-force oracles, 5 <= p <= 31",
        mismatches.is_empty() && elapsed < Duration::from_secs(30),
        &format!("cases={cases} mismatches={mismatches:?} elapsed={elapsed:.2?}"),
    );
}

#[test]
fn ac4_qr_oracle() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for p in naive_primes(3, 997) {
        let table = square_table(p);
        let prime = PrimeModulus::new(p).unwrap();
        for a in 1..p {
            checked += 1;
            let euler = is_quadratic_residue(ResidueClass::new(a, p).unwrap(), prime).unwrap();
            if euler != table.contains(&a) {
                bad.push((p, a));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        4,
        "Euler criterion == square table, p <= 997",
        bad.is_empty() && elapsed < Duration::from_secs(5),
        &format!(
            "checked={checked} mismatches={} elapsed={elapsed:.2?}",
            bad.len()
        ),
    );
}

#[test]
fn ac5_order_formulas() {
    let mut problems = Vec::new();
    let odd_primes = naive_primes(3, 97);
    for &p in &odd_primes {
        for k in 1..=3u32 {
            let order = bordism_order_cyclic(p, k).unwrap();
            let direct = (0..2 * k).fold(1u64, |acc, _| acc * p);
            let e2 = e2_diagonal(p.pow(k)).unwrap();
            let product: u64 = e2.terms.iter().map(|t| t.order).product();
            if order != direct || product != direct {
                problems.push(format!("cyclic p={p} k={k}"));
            }
            if k >= 2 && p >= 5 && !extension_order_check(p, k).unwrap() {
                problems.push(format!("extension p={p} k={k}"));
            }
            if p >= 5 && p % 3 == 1 {
                let d3 = bordism_order_metacyclic_d3(p, k).unwrap();
                if d3.order() != Some(9 * p.pow(k)) || !d3.is_cyclic() {
                    problems.push(format!("d3 p={p} k={k}"));
                }
                if d3.order() != Some(9 * lens_class_order(p, k).unwrap()) {
                    problems.push(format!("d3 vs lens p={p} k={k}"));
                }
            }
        }
    }
    verdict(
        5,
        "p^(2k), E2 product, extension, 9 p^k",
        problems.is_empty(),
        &format!("primes={} k=1..3 problems={problems:?}", odd_primes.len()),
    );
}

#[test]
fn ac6_transfer_dichotomy() {
    let primes = naive_primes(5, 997);
    let annihilates = primes.iter().all(|&p| transfer_inclusion_scalar(p, p) == 1);
    let coprime_injective = primes.iter().all(|&p| transfer_inclusion_scalar(p, 9) == 9);
    let at_three = transfer_inclusion_scalar(3, 9);
    verdict(
        6,
        "transfer_inclusion_scalar(p,p)=1 (p>=5), (p,9)=9 (p>=5), (3,9)=9",
        annihilates && coprime_injective && at_three == 9,
        &format!(
            "(p,p)=1 for all p in 5..997: {annihilates}; (p,9)=9: {coprime_injective}; (3,9)={at_three} \
             [index 3 on a class of order 9 leaves order 9/gcd(9,3)=3]"
        ),
    );
}

#[test]
fn ac7_canonicalization() {
    let mut problems = Vec::new();
    let mut pairs = 0usize;
    for p in naive_primes(3, 13) {
        let prime = PrimeModulus::new(p).unwrap();
        for b0 in 0..p {
            for b1 in 0..p {
                pairs += 1;
                let x = PontrjaginPair::from_values(b0, b1, prime);
                let c = canonical_form(x);
                if canonical_form(c) != c {
                    problems.push(format!("not idempotent at {x}"));
                }
                let mut orbit = BTreeSet::new();
                for k in 1..p {
                    let y = reparametrize(x, prime.residue(k)).unwrap();
                    orbit.insert(y.values());
                    if canonical_form(y) != c {
                        problems.push(format!("not orbit-constant at {x}, k={k}"));
                    }
                }
                if orbit.iter().min() != Some(&c.values()) {
                    problems.push(format!("not the orbit minimum at {x}"));
                }
                if (p - 1) % orbit.len() as u64 != 0 || orbit.len() != orbit_size(x) {
                    problems.push(format!("orbit size {} at {x}", orbit.len()));
                }
            }
        }
    }
    verdict(
        7,
        "canonical_form idempotent, orbit-constant; orbit sizes divide p-1 (p <= 13)",
        problems.is_empty(),
        &format!("pairs={pairs} problems={problems:?}"),
    );
}

#[test]
fn ac8_group_enumeration() {
    let (code, out) = run(&["groups", "--max-order", "100", "--format", "json"]);
    let report: commands::GroupsReport = serde_json::from_slice(&out).unwrap();
    let listed: BTreeSet<(u64, u64, u64, u64)> = report
        .entries
        .iter()
        .map(|e| (e.order, e.m, e.n, e.r))
        .collect();
    let oracle = presentation_scan(100);
    let cyclic_ok = report
        .entries
        .iter()
        .filter(|e| e.cyclic)
        .map(|e| e.order)
        .eq((1..=100).step_by(2));
    let has_21 = report
        .entries
        .iter()
        .any(|e| (e.order, e.m, e.n, e.r) == (21, 7, 3, 2) && e.theorem1_applies);
    let flag_27 = report
        .entries
        .iter()
        .any(|e| (e.m, e.n) == (1, 27) && !e.theorem1_applies);
    let ok = code == 0
        && listed == oracle
        && listed.len() == report.entries.len()
        && cyclic_ok
        && has_21
        && flag_27;
    let nonabelian: Vec<_> = oracle.iter().filter(|g| g.1 > 1).collect();
    verdict(
        8,
        "groups --max-order 100 == presentation scan",
        ok,
        &format!(
            "entries={} oracle={} nonabelian={nonabelian:?} (7,3,2)@21={has_21} order27-not-applicable={flag_27}",
            report.entries.len(),
            oracle.len()
        ),
    );
}

#[test]
fn ac9_determinism() {
    let max_jobs = std::thread::available_parallelism()
        .map_or(8, |n| n.get())
        .max(8)
        .to_string();
    let commands: [&[&str]; 7] = [
        &["lemma5", "--min", "5", "--max", "3000", "--format", "json"],
        &["lemma5", "--min", "5", "--max", "3000", "--format", "csv"],
        &[
            "invariants",
            "--p",
            "11",
            "--q",
            "2,3,7",
            "--format",
            "json",
        ],
        &[
            "independent",
            "--p",
            "7",
            "--qa",
            "1,1,1",
            "--qb",
            "1,2,2",
            "--brute",
            "--format",
            "json",
        ],
        &["orders", "--p", "5", "--k", "3", "--format", "json"],
        &["orders-d3", "--p", "13", "--k", "2", "--format", "text"],
        &["groups", "--max-order", "300", "--format", "json"],
    ];
    let mut differing = Vec::new();
    for args in commands {
        let mut outputs = Vec::new();
        for jobs in ["1", max_jobs.as_str(), max_jobs.as_str()] {
            let mut full = vec!["--jobs", jobs];
            full.extend_from_slice(args);
            outputs.push(run(&full));
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            differing.push(args.join(" "));
        }
    }
    // The in-process renderer must agree with the binary as well.
    let (report, _) = commands::lemma5(5, 3000, 31).unwrap();
    let in_process = report.render(Format::Json).unwrap().into_bytes();
    let (_, from_bin) = run(&["lemma5", "--min", "5", "--max", "3000", "--format", "json"]);
    if in_process != from_bin {
        differing.push("in-process vs binary".into());
    }
    verdict(
        9,
        "byte-identical output across runs and --jobs 1 vs --jobs max",
        differing.is_empty(),
        &format!("commands=7 max_jobs={max_jobs} differing={differing:?}"),
    );
}
