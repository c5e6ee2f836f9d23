//! The invariant suite behind `nodalcount selftest`. The report carries no
//! timings, so two runs print identical bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{stirling_split, theta_closed, theta_recursive};
use crate::genus0::oracles::{plane_recursion_oracle, psi_moduli_oracle, schubert_lines_oracle};
use crate::nodal::{Calculator, RTFixtureTable};
use crate::problem::{
    canonical_key, genus0_problems, nodal_problems, vbar_dimension, InvariantKey, ProblemSpec,
};
use crate::{format_rational, ExactRational};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub version: u32,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    /// `CR₁` values of reference problems, keyed by canonical key.
    pub snapshots: BTreeMap<String, String>,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAILED" };
            out += &format!("{:<22} {:>4} cases  {status}\n", c.name, c.cases);
            for f in &c.failures {
                out += &format!("    {f}\n");
            }
        }
        for (k, v) in &self.snapshots {
            out += &format!("{k} = {v}\n");
        }
        out += if self.passed {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        };
        out
    }
}

/// Published one-nodal counts: `(n, d, number of constraints of codimension
/// 2, 3, …), count`.
pub const TABLE_ROWS: [(u32, u32, &[usize], u64); 5] = [
    (3, 4, &[5, 5], 1800),
    (4, 4, &[5, 1, 4], 1800),
    (5, 4, &[5, 1, 0, 4], 1800),
    (5, 6, &[2, 1, 1, 7], 20340),
    (6, 6, &[2, 1, 1, 1, 6], 20340),
];

/// Builds a problem from multiplicities of codimensions `2, 3, …`.
pub fn spec_from_counts(n: u32, d: u32, counts: &[usize]) -> crate::Result<ProblemSpec> {
    let codims = counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 2, c))
        .collect();
    ProblemSpec::new(n, d, codims)
}

struct Check {
    outcome: CheckOutcome,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            outcome: CheckOutcome {
                name,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.cases += 1;
        if !ok {
            self.outcome.failures.push(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.outcome.cases += 1;
        self.outcome.failures.push(message);
    }
}

/// Partitions of a `size`-set into exactly `blocks` nonempty blocks, by
/// walking restricted growth strings.
fn count_set_partitions(size: u32, blocks: u32) -> u64 {
    fn walk(pos: u32, size: u32, used: u32, blocks: u32) -> u64 {
        if pos == size {
            return (used == blocks) as u64;
        }
        if used + (size - pos) < blocks {
            return 0;
        }
        let mut total = 0;
        for b in 0..=used.min(blocks.saturating_sub(1)) {
            let next = if b == used { used + 1 } else { used };
            total += walk(pos + 1, size, next, blocks);
        }
        total
    }
    if size == 0 {
        return (blocks == 0) as u64;
    }
    walk(0, size, 0, blocks)
}

fn theta_identity() -> CheckOutcome {
    let mut check = Check::new("theta_identity");
    for k in 1..=7u32 {
        for m in 0..=(14 - 2 * k) {
            let (rec, closed) = (theta_recursive(k, m), theta_closed(k, m));
            check.case(rec == closed, || {
                format!(
                    "k={k} m={m}: recursion {} closed form {}",
                    format_rational(&rec),
                    format_rational(&closed)
                )
            });
        }
    }
    check.outcome
}

fn stirling_partitions() -> CheckOutcome {
    let mut check = Check::new("stirling_partitions");
    for k_star in 0..=9u32 {
        for k in 0..=k_star {
            let (dp, brute) = (
                stirling_split(k_star, k),
                BigInt::from(count_set_partitions(k_star, k)),
            );
            check.case(dp == brute, || {
                format!("k*={k_star} k={k}: {dp} vs enumeration {brute}")
            });
        }
    }
    check.outcome
}

fn schubert_lines() -> CheckOutcome {
    let mut check = Check::new("schubert_lines");
    for n in 2..=6 {
        let calc = Calculator::new(n);
        for spec in genus0_problems(n, 1) {
            match (
                calc.count_rational(&spec),
                schubert_lines_oracle(n, spec.mu.codims()),
            ) {
                (Ok(got), Ok(want)) => {
                    let want = ExactRational::from_integer(want);
                    check.case(got == want, || {
                        format!(
                            "{spec}: {} vs {}",
                            format_rational(&got),
                            format_rational(&want)
                        )
                    })
                }
                (a, b) => check.fail(format!("{spec}: {a:?} / {b:?}")),
            }
        }
    }
    check.outcome
}

fn plane_curves() -> CheckOutcome {
    let mut check = Check::new("plane_curves");
    let calc = Calculator::new(2);
    for d in 1..=5u32 {
        let spec =
            ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1]).expect("valid plane problem");
        match calc.count_rational(&spec) {
            Ok(got) => {
                let want = ExactRational::from_integer(plane_recursion_oracle(d));
                check.case(got == want, || {
                    format!(
                        "d={d}: {} vs {}",
                        format_rational(&got),
                        format_rational(&want)
                    )
                })
            }
            Err(e) => check.fail(format!("d={d}: {e}")),
        }
    }
    check.outcome
}

fn psi_top_pairing() -> CheckOutcome {
    let mut check = Check::new("psi_top_pairing");
    for j in 3..=8usize {
        let mut exps = vec![0u32; j + 1];
        exps[0] = j as u32 - 2;
        match psi_moduli_oracle(&exps) {
            Ok(v) => check.case(v.is_one(), || format!("|J|={j}: {v}")),
            Err(e) => check.fail(format!("|J|={j}: {e}")),
        }
    }
    check.outcome
}

fn small_matrix() -> Vec<(Calculator, Vec<ProblemSpec>)> {
    (2..=4)
        .map(|n| {
            (
                Calculator::new(n),
                (1..=3).flat_map(|d| nodal_problems(n, d)).collect(),
            )
        })
        .collect()
}

fn cr1_two_routes(matrix: &[(Calculator, Vec<ProblemSpec>)]) -> CheckOutcome {
    let mut check = Check::new("cr1_two_routes");
    for (calc, specs) in matrix {
        for spec in specs {
            match calc.cr1(spec) {
                Ok(v) => {
                    let split = v.terms.iter().all(|t| t.eta_route == t.theta_route);
                    check.case(split, || format!("{spec}: per-k terms differ"))
                }
                Err(e) => check.fail(format!("{spec}: {e}")),
            }
        }
    }
    check.outcome
}

fn binomial_transform(matrix: &[(Calculator, Vec<ProblemSpec>)]) -> CheckOutcome {
    let mut check = Check::new("binomial_transform");
    for (calc, specs) in matrix {
        let vbar = calc.vbar();
        for spec in specs {
            let mut k = 1;
            while vbar_dimension(spec.n, k, 0) >= 0 {
                let mut m = 0;
                while vbar_dimension(spec.n, k, m) >= 0 && m as usize <= spec.mu.len() {
                    let dim = vbar_dimension(spec.n, k, m) as u32;
                    for l in 0..=dim {
                        let direct = vbar.eta_tilde_number(spec, k, m, l, dim - l);
                        let forward = vbar.eta_tilde_forward(spec, k, m, l, dim - l);
                        match (direct, forward) {
                            (Ok(a), Ok(b)) => check.case(a == b, || {
                                format!(
                                    "{spec} k={k} m={m} l={l}: {} vs {}",
                                    format_rational(&a),
                                    format_rational(&b)
                                )
                            }),
                            (a, b) => {
                                check.fail(format!("{spec} k={k} m={m} l={l}: {a:?} / {b:?}"))
                            }
                        }
                    }
                    m += 1;
                }
                k += 1;
            }
        }
    }
    check.outcome
}

fn pipeline_round_trip(matrix: &[(Calculator, Vec<ProblemSpec>)]) -> CheckOutcome {
    let mut check = Check::new("pipeline_round_trip");
    let mut x: i64 = 12345;
    for (calc, specs) in matrix {
        for spec in specs {
            // fixed linear congruential sequence, nonnegative where a negative
            // count would be rejected
            x = (x * 1103515245 + 12345).rem_euclid(1 << 31);
            let wanted = if spec.n >= 3 {
                x % 100_000
            } else {
                x % 100_000 - 50_000
            };
            let outcome = calc.cr1(spec).and_then(|v| {
                if !v.eta.is_integer() {
                    return Err(crate::Error::Inconsistent(format!(
                        "CR1 = {}",
                        format_rational(&v.eta)
                    )));
                }
                let mut table = RTFixtureTable::new();
                table.insert(spec, BigInt::from(2 * wanted) + v.eta.to_integer());
                calc.count_nodal(spec, &table)
            });
            match outcome {
                Ok(got) => check.case(got == ExactRational::from_integer(wanted.into()), || {
                    format!("{spec}: X={wanted} came back as {}", format_rational(&got))
                }),
                Err(e) => check.fail(format!("{spec}: {e}")),
            }
        }
    }
    check.outcome
}

fn published_table(
    fixtures: &RTFixtureTable,
    snapshots: &mut BTreeMap<String, String>,
) -> CheckOutcome {
    let mut check = Check::new("published_table");
    for (n, d, counts, want) in TABLE_ROWS {
        let spec = spec_from_counts(n, d, counts).expect("table rows are valid");
        let calc = Calculator::new(n);
        if let Ok(v) = calc.cr1(&spec) {
            snapshots.insert(
                canonical_key(&InvariantKey::Cr1(spec.clone())),
                format_rational(&v.eta),
            );
        }
        match calc.count_nodal(&spec, fixtures) {
            Ok(got) => check.case(got == ExactRational::from_integer(want.into()), || {
                format!("{spec}: {} vs published {want}", format_rational(&got))
            }),
            Err(e) => check.fail(format!("{spec}: {e}")),
        }
    }
    check.outcome
}

fn plane_identity(
    fixtures: &RTFixtureTable,
    snapshots: &mut BTreeMap<String, String>,
) -> CheckOutcome {
    let mut check = Check::new("plane_identity");
    let calc = Calculator::new(2);
    for d in 1..=5u32 {
        let spec =
            ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1]).expect("valid plane problem");
        if let Ok(v) = calc.cr1(&spec) {
            snapshots.insert(
                canonical_key(&InvariantKey::Cr1(spec)),
                format_rational(&v.eta),
            );
        }
        match calc.plane_identity_check(d, fixtures) {
            Ok(ok) => check.case(ok, || {
                format!("d={d}: nodal count differs from C(d-1,2) n_d")
            }),
            Err(e) => check.fail(format!("d={d}: {e}")),
        }
    }
    check.outcome
}

/// Lines and conics are never nodal, so every fixture-backed problem of degree
/// at most two in `P^3` and `P^4` must give zero.
fn low_degree_vanishing(fixtures: &RTFixtureTable) -> CheckOutcome {
    let mut check = Check::new("low_degree_vanishing");
    for n in 3..=4 {
        let calc = Calculator::new(n);
        for d in 1..=2 {
            for spec in nodal_problems(n, d) {
                match calc.count_nodal(&spec, fixtures) {
                    Ok(v) => check.case(v.is_zero(), || format!("{spec}: {}", format_rational(&v))),
                    Err(e) => check.fail(format!("{spec}: {e}")),
                }
            }
        }
    }
    check.outcome
}

/// Runs every check against the bundled RT fixtures.
pub fn run_selftest() -> SelftestReport {
    run_selftest_with(&RTFixtureTable::bundled())
}

pub fn run_selftest_with(fixtures: &RTFixtureTable) -> SelftestReport {
    let matrix = small_matrix();
    let mut snapshots = BTreeMap::new();
    let checks = vec![
        theta_identity(),
        stirling_partitions(),
        schubert_lines(),
        plane_curves(),
        psi_top_pairing(),
        cr1_two_routes(&matrix),
        binomial_transform(&matrix),
        pipeline_round_trip(&matrix),
        published_table(fixtures, &mut snapshots),
        plane_identity(fixtures, &mut snapshots),
        low_degree_vanishing(fixtures),
    ];
    SelftestReport {
        version: REPORT_VERSION,
        passed: checks.iter().all(CheckOutcome::passed),
        checks,
        snapshots,
    }
}
