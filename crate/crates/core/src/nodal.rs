//! The correction term `CR₁(μ)` by two independent routes, and the one-nodal
//! count `n_d^{(1)}(μ) = ½(RT_{1,d}(μ) − CR₁(μ))`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cache::ValueStore;
use crate::combinatorics::{binomial, ThetaTable};
use crate::error::{Error, Result};
use crate::genus0::{DescendantSpec, Genus0Engine};
use crate::problem::{canonical_key, vbar_dimension, InvariantKey, ProblemSpec};
use crate::vbar::VbarIntersections;
use crate::{format_rational, ExactRational};

pub const FIXTURE_VERSION: u64 = 1;

/// Contribution of the `k`-component spaces to `CR₁`, computed both ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermBreakdown {
    pub k: u32,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub eta_route: ExactRational,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub theta_route: ExactRational,
}

/// Both values of `CR₁(μ)` with the per-`k` split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cr1Values {
    pub eta: ExactRational,
    pub theta: ExactRational,
    pub terms: Vec<TermBreakdown>,
}

/// Externally sourced values of the genus-one invariant `RT_{1,d}`, keyed by
/// `canonical_key(nodal(n, d, μ))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RTFixtureTable {
    entries: BTreeMap<String, BigInt>,
}

impl RTFixtureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key_for(spec: &ProblemSpec) -> String {
        canonical_key(&InvariantKey::Nodal(spec.clone()))
    }

    pub fn insert(&mut self, spec: &ProblemSpec, value: BigInt) {
        self.entries.insert(Self::key_for(spec), value);
    }

    pub fn get(&self, spec: &ProblemSpec) -> Option<&BigInt> {
        self.entries.get(&Self::key_for(spec))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `{"version": 1, "<key>": <integer or decimal string>, ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "RT fixtures, line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        let Value::Object(map) = value else {
            return Err(Error::Parse("RT fixtures must be a JSON object".into()));
        };
        match map.get("version").and_then(Value::as_u64) {
            Some(FIXTURE_VERSION) => {}
            Some(v) => {
                return Err(Error::Parse(format!(
                    "RT fixtures version {v}, expected {FIXTURE_VERSION}"
                )))
            }
            None => {
                return Err(Error::Parse(
                    "RT fixtures need a numeric \"version\" field".into(),
                ))
            }
        }
        let mut entries = BTreeMap::new();
        for (key, v) in map {
            if key == "version" {
                continue;
            }
            let parsed = match &v {
                Value::Number(num) if num.is_i64() || num.is_u64() => {
                    num.to_string().parse::<BigInt>().ok()
                }
                Value::String(s) => s.trim().parse::<BigInt>().ok(),
                _ => None,
            };
            let Some(parsed) = parsed else {
                return Err(Error::Parse(format!(
                    "RT fixture `{key}` is not an integer: {v}"
                )));
            };
            entries.insert(key, parsed);
        }
        Ok(Self { entries })
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("version".into(), Value::from(FIXTURE_VERSION));
        for (k, v) in &self.entries {
            let value = match i64::try_from(v) {
                Ok(small) => Value::from(small),
                Err(_) => Value::from(v.to_string()),
            };
            map.insert(k.clone(), value);
        }
        serde_json::to_string_pretty(&Value::Object(map)).expect("fixture table serializes")
    }

    /// The fixture file shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_json(include_str!("../fixtures/rt_fixtures.json"))
            .expect("bundled fixtures parse")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

pub fn rt_lookup(spec: &ProblemSpec, fixtures: &RTFixtureTable) -> Result<BigInt> {
    spec.require_nodal()?;
    fixtures
        .get(spec)
        .cloned()
        .ok_or_else(|| Error::MissingFixture(RTFixtureTable::key_for(spec)))
}

/// Everything needed to evaluate the counts for one target `P^n`.
#[derive(Debug)]
pub struct Calculator {
    vbar: VbarIntersections,
    theta: ThetaTable,
    store: Option<Arc<dyn ValueStore>>,
}

impl Calculator {
    pub fn new(n: u32) -> Self {
        Self {
            vbar: VbarIntersections::new(n),
            theta: ThetaTable::new(),
            store: None,
        }
    }

    /// A calculator whose genus-0, `η̃` and `η` values persist in `store`.
    pub fn with_store(n: u32, store: Arc<dyn ValueStore>) -> Self {
        Self {
            vbar: VbarIntersections::with_store(n, store.clone()),
            theta: ThetaTable::new(),
            store: Some(store),
        }
    }

    fn check_target(&self, spec: &ProblemSpec) -> Result<()> {
        if spec.n != self.n() {
            return Err(Error::InvalidProblem(format!(
                "problem lives in P^{} but the calculator targets P^{}",
                spec.n,
                self.n()
            )));
        }
        Ok(())
    }

    fn through_store(
        &self,
        key: InvariantKey,
        compute: impl FnOnce() -> Result<ExactRational>,
    ) -> Result<ExactRational> {
        let Some(store) = &self.store else {
            return compute();
        };
        let key = canonical_key(&key);
        if let Some(v) = store.lookup(&key) {
            return Ok(v);
        }
        let value = compute()?;
        store.record(&key, &value);
        Ok(value)
    }

    /// `n_d(μ)`, via the store when there is one.
    pub fn count_rational(&self, spec: &ProblemSpec) -> Result<ExactRational> {
        self.check_target(spec)?;
        spec.require_genus0()?;
        self.through_store(InvariantKey::Rational(spec.clone()), || {
            self.engine().count_rational(spec)
        })
    }

    /// `<ψ^b h^c ; μ>_d`, via the store when there is one.
    pub fn descendant(&self, spec: &ProblemSpec, b: u32, c: u32) -> Result<ExactRational> {
        self.check_target(spec)?;
        if c > spec.n {
            return Err(Error::InvalidProblem(format!(
                "codimension {c} exceeds n = {}",
                spec.n
            )));
        }
        let key = InvariantKey::Descendant {
            spec: spec.clone(),
            b,
            c,
        };
        self.through_store(key, || {
            Ok(self.engine().descendant(&DescendantSpec {
                n: spec.n,
                d: spec.d,
                b,
                c,
                constraints: spec.mu.clone(),
            }))
        })
    }

    pub fn n(&self) -> u32 {
        self.vbar.n()
    }

    pub fn engine(&self) -> &Genus0Engine {
        self.vbar.engine()
    }

    pub fn vbar(&self) -> &VbarIntersections {
        &self.vbar
    }

    pub fn theta_table(&self) -> &ThetaTable {
        &self.theta
    }

    /// `Σ_{2k <= n+1} (−1)^{k−1}(k−1)! Σ_l C(n+1, l) <a^l η_{n+1−2k−l}, [V̄_k(μ)]>`.
    pub fn cr1_eta(&self, spec: &ProblemSpec) -> Result<ExactRational> {
        Ok(self.cr1_eta_terms(spec)?.into_iter().map(|(_, v)| v).sum())
    }

    /// `Σ_{2k+m <= n+1} Θ(k, m) Σ_l C(n+1, l) <a^l η̃_{n+1−2k−m−l}, [V̄_{k,m}(μ)]>`.
    pub fn cr1_theta(&self, spec: &ProblemSpec) -> Result<ExactRational> {
        Ok(self
            .cr1_theta_terms(spec)?
            .into_iter()
            .map(|(_, v)| v)
            .sum())
    }

    fn cr1_eta_terms(&self, spec: &ProblemSpec) -> Result<Vec<(u32, ExactRational)>> {
        self.check_target(spec)?;
        spec.require_nodal()?;
        let n = spec.n;
        let mut out = Vec::new();
        let mut k = 1u32;
        while 2 * k <= n + 1 {
            let dim = vbar_dimension(n, k, 0) as u32;
            let mut inner = ExactRational::zero();
            for l in 0..=dim {
                let eta = self.vbar.eta_number(spec, k, 0, l, dim - l)?;
                inner += ExactRational::from_integer(binomial(n as u64 + 1, l as i64)) * eta;
            }
            let sign_fact = crate::combinatorics::theta_closed(k, 0);
            out.push((k, sign_fact * inner));
            k += 1;
        }
        Ok(out)
    }

    fn cr1_theta_terms(&self, spec: &ProblemSpec) -> Result<Vec<(u32, ExactRational)>> {
        self.check_target(spec)?;
        spec.require_nodal()?;
        let n = spec.n;
        let mut out = Vec::new();
        let mut k = 1u32;
        while 2 * k <= n + 1 {
            let mut per_k = ExactRational::zero();
            let mut m = 0u32;
            while vbar_dimension(n, k, m) >= 0 {
                if m as usize > spec.mu.len() {
                    break;
                }
                let dim = vbar_dimension(n, k, m) as u32;
                let mut inner = ExactRational::zero();
                for l in 0..=dim {
                    let tilde = self.vbar.eta_tilde_number(spec, k, m, l, dim - l)?;
                    inner += ExactRational::from_integer(binomial(n as u64 + 1, l as i64)) * tilde;
                }
                per_k += self.theta.theta(k, m) * inner;
                m += 1;
            }
            out.push((k, per_k));
            k += 1;
        }
        Ok(out)
    }

    /// Both routes with the per-`k` breakdown; fails if they disagree.
    pub fn cr1(&self, spec: &ProblemSpec) -> Result<Cr1Values> {
        let eta_terms = self.cr1_eta_terms(spec)?;
        let theta_terms = self.cr1_theta_terms(spec)?;
        let terms: Vec<TermBreakdown> = eta_terms
            .into_iter()
            .zip(theta_terms)
            .map(|((k, eta_route), (_, theta_route))| TermBreakdown {
                k,
                eta_route,
                theta_route,
            })
            .collect();
        let eta: ExactRational = terms.iter().map(|t| t.eta_route.clone()).sum();
        let theta: ExactRational = terms.iter().map(|t| t.theta_route.clone()).sum();
        if eta != theta {
            return Err(Error::Inconsistent(format!(
                "CR1 routes disagree for {spec}: eta route {}, theta route {}",
                format_rational(&eta),
                format_rational(&theta)
            )));
        }
        Ok(Cr1Values { eta, theta, terms })
    }

    /// `½(RT_{1,d}(μ) − CR₁(μ))`.
    pub fn count_nodal(
        &self,
        spec: &ProblemSpec,
        fixtures: &RTFixtureTable,
    ) -> Result<ExactRational> {
        let rt = rt_lookup(spec, fixtures)?;
        let cr1 = self.cr1(spec)?;
        nodal_from_parts(spec, &rt, &cr1.eta)
    }

    /// Whether the plane count with a node equals `C(d−1, 2) n_d` for `3d − 1`
    /// points.
    pub fn plane_identity_check(&self, d: u32, fixtures: &RTFixtureTable) -> Result<bool> {
        assert_eq!(self.n(), 2, "plane identity needs a P^2 calculator");
        let spec = ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1])?;
        let nodal = self.count_nodal(&spec, fixtures)?;
        let rational = self.count_rational(&spec)?;
        let genus = binomial(d as u64 - 1, 2);
        Ok(nodal == ExactRational::from_integer(genus) * rational)
    }
}

/// Final assembly with the integrality checks.
pub fn nodal_from_parts(
    spec: &ProblemSpec,
    rt: &BigInt,
    cr1: &ExactRational,
) -> Result<ExactRational> {
    let value =
        (ExactRational::from_integer(rt.clone()) - cr1) / ExactRational::from_integer(2.into());
    if !value.is_integer() {
        return Err(Error::Inconsistent(format!(
            "{spec}: (RT − CR1)/2 = ({rt} − {})/2 = {} is not an integer",
            format_rational(cr1),
            format_rational(&value)
        )));
    }
    if spec.n >= 3 && value.is_negative() {
        return Err(Error::Inconsistent(format!(
            "{spec}: negative one-nodal count {}",
            format_rational(&value)
        )));
    }
    Ok(value)
}

/// A report for one computation; rationals are emitted as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputationReport {
    pub inputs: ReportInputs,
    pub result: String,
    pub cr1_eta: Option<String>,
    pub cr1_theta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rt_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodal_count: Option<String>,
    pub terms: Vec<TermReport>,
    pub cache: CacheStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInputs {
    #[serde(flatten)]
    pub problem: ProblemSpec,
    /// ψ exponent and codimension at the descendant point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
}

impl ComputationReport {
    pub fn new(problem: &ProblemSpec, result: &ExactRational) -> Self {
        Self {
            inputs: ReportInputs {
                problem: problem.clone(),
                b: None,
                c: None,
            },
            result: format_rational(result),
            cr1_eta: None,
            cr1_theta: None,
            rt_value: None,
            nodal_count: None,
            terms: Vec::new(),
            cache: CacheStats::default(),
        }
    }

    pub fn with_cr1(mut self, values: &Cr1Values) -> Self {
        self.cr1_eta = Some(format_rational(&values.eta));
        self.cr1_theta = Some(format_rational(&values.theta));
        self.terms = values.terms.iter().map(TermReport::from).collect();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub k: u32,
    pub eta_route: String,
    pub theta_route: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

impl From<&TermBreakdown> for TermReport {
    fn from(t: &TermBreakdown) -> Self {
        Self {
            k: t.k,
            eta_route: format_rational(&t.eta_route),
            theta_route: format_rational(&t.theta_route),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactRational {
        ExactRational::from_integer(v.into())
    }

    #[test]
    fn plane_cr1_has_only_k1() {
        let spec = ProblemSpec::new(2, 2, vec![2; 5]).unwrap();
        let calc = Calculator::new(2);
        let values = calc.cr1(&spec).unwrap();
        assert_eq!(values.terms.len(), 1);
        // <η_1> + 3<a> over V̄_1(μ)
        let vbar = calc.vbar();
        let direct = vbar.eta_number(&spec, 1, 0, 0, 1).unwrap()
            + int(3) * vbar.eta_number(&spec, 1, 0, 1, 0).unwrap();
        assert_eq!(values.eta, direct);
    }

    #[test]
    fn routes_agree_in_p3() {
        let spec = ProblemSpec::new(3, 2, vec![2; 7]).unwrap();
        let calc = Calculator::new(3);
        assert_eq!(calc.cr1_eta(&spec).unwrap(), calc.cr1_theta(&spec).unwrap());
        let values = calc.cr1(&spec).unwrap();
        for t in &values.terms {
            assert_eq!(t.eta_route, t.theta_route, "k = {}", t.k);
        }
    }

    #[test]
    fn fixture_round_trip() {
        let spec = ProblemSpec::new(3, 2, vec![2; 7]).unwrap();
        let mut table = RTFixtureTable::new();
        table.insert(&spec, BigInt::from(1234));
        let back = RTFixtureTable::from_json(&table.to_json()).unwrap();
        assert_eq!(rt_lookup(&spec, &back).unwrap(), BigInt::from(1234));
        let other = ProblemSpec::new(3, 2, vec![3, 2, 2, 2, 2, 2]).unwrap();
        match rt_lookup(&other, &back) {
            Err(Error::MissingFixture(key)) => assert_eq!(key, "v1|nodal|3|2|3,2,2,2,2,2|"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fixture_parse_errors() {
        assert!(RTFixtureTable::from_json("{\"a\": 1}").is_err());
        assert!(RTFixtureTable::from_json("{\"version\": 2}").is_err());
        assert!(RTFixtureTable::from_json("{\"version\": 1, \"k\": 1.5}").is_err());
        let big = RTFixtureTable::from_json(
            "{\"version\": 1, \"k\": \"123456789012345678901234567890\"}",
        )
        .unwrap();
        assert_eq!(big.len(), 1);
    }

    #[test]
    fn synthetic_fixture_recovers_count() {
        let spec = ProblemSpec::new(3, 2, vec![2; 7]).unwrap();
        let calc = Calculator::new(3);
        let cr1 = calc.cr1_eta(&spec).unwrap();
        assert!(cr1.is_integer());
        let mut table = RTFixtureTable::new();
        table.insert(&spec, BigInt::from(2 * 17) + cr1.to_integer());
        assert_eq!(calc.count_nodal(&spec, &table).unwrap(), int(17));
    }

    #[test]
    fn odd_difference_is_rejected() {
        let spec = ProblemSpec::new(3, 2, vec![2; 7]).unwrap();
        assert!(nodal_from_parts(&spec, &BigInt::from(1), &int(0)).is_err());
        assert!(nodal_from_parts(&spec, &BigInt::from(0), &int(4)).is_err());
        let plane = ProblemSpec::new(2, 1, vec![2, 2]).unwrap();
        assert_eq!(
            nodal_from_parts(&plane, &BigInt::from(0), &int(4)).unwrap(),
            int(-2)
        );
    }
}
