//! Counting problems, their dimension conditions and canonical cache keys.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Codimensions of general linear subspaces of `P^n`, stored sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ConstraintTuple(Vec<u32>);

impl ConstraintTuple {
    /// Every codimension must be at least two.
    pub fn new(mut codims: Vec<u32>) -> Result<Self> {
        if let Some(bad) = codims.iter().find(|&&c| c < 2) {
            return Err(Error::InvalidProblem(format!(
                "constraint codimension {bad} is below 2"
            )));
        }
        codims.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(codims))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn codims(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_codim(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Adds one more constraint, keeping the canonical order.
    pub fn with(&self, codim: u32) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(codim);
        Self::new(v)
    }

    /// `counts[c]` is the number of constraints of codimension `c`, for `c <= n`.
    pub fn counts(&self, n: u32) -> Vec<u8> {
        let mut counts = vec![0u8; n as usize + 1];
        for &c in &self.0 {
            counts[c as usize] += 1;
        }
        counts
    }

    fn joined(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<u32>> for ConstraintTuple {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ConstraintTuple> for Vec<u32> {
    fn from(t: ConstraintTuple) -> Self {
        t.0
    }
}

impl fmt::Display for ConstraintTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.joined())
    }
}

/// `Σ codim − N`.
pub fn total_codim(mu: &ConstraintTuple) -> i64 {
    mu.codims().iter().map(|&c| c as i64).sum::<i64>() - mu.len() as i64
}

/// One counting problem: degree-`d` curves in `P^n` through the constraints `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub n: u32,
    pub d: u32,
    #[serde(rename = "constraints")]
    pub mu: ConstraintTuple,
}

impl ProblemSpec {
    pub fn new(n: u32, d: u32, codims: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidProblem(format!("n = {n}, need n >= 2")));
        }
        if d < 1 {
            return Err(Error::InvalidProblem("degree must be at least 1".into()));
        }
        let mu = ConstraintTuple::new(codims)?;
        if mu.max_codim() > n {
            return Err(Error::InvalidProblem(format!(
                "constraint codimension {} exceeds n = {n}",
                mu.max_codim()
            )));
        }
        Ok(Self { n, d, mu })
    }

    /// `d(n+1) + n − 3`, the codimension a genus-0 count needs.
    pub fn genus0_target(&self) -> i64 {
        self.d as i64 * (self.n as i64 + 1) + self.n as i64 - 3
    }

    /// `d(n+1) − 1`, the codimension a one-nodal count needs.
    pub fn nodal_target(&self) -> i64 {
        self.d as i64 * (self.n as i64 + 1) - 1
    }

    pub fn require_genus0(&self) -> Result<()> {
        let actual = total_codim(&self.mu);
        if actual != self.genus0_target() {
            return Err(Error::DimensionMismatch {
                condition: "codim μ = d(n+1)+n−3",
                expected: self.genus0_target(),
                actual,
            });
        }
        Ok(())
    }

    pub fn require_nodal(&self) -> Result<()> {
        let actual = total_codim(&self.mu);
        if actual != self.nodal_target() {
            return Err(Error::DimensionMismatch {
                condition: "codim μ = d(n+1)−1",
                expected: self.nodal_target(),
                actual,
            });
        }
        Ok(())
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} μ={}", self.n, self.d, self.mu)
    }
}

pub fn validate_genus0(spec: &ProblemSpec) -> bool {
    spec.require_genus0().is_ok()
}

pub fn validate_nodal(spec: &ProblemSpec) -> bool {
    spec.require_nodal().is_ok()
}

/// Every constraint tuple with codimensions in `2..=n` and
/// `total_codim == target`, in descending lexicographic order.
pub fn constraint_tuples(n: u32, target: i64) -> Vec<ConstraintTuple> {
    fn walk(max: u32, left: i64, cur: &mut Vec<u32>, out: &mut Vec<ConstraintTuple>) {
        if left == 0 {
            out.push(ConstraintTuple(cur.clone()));
            return;
        }
        for c in (2..=max).rev() {
            if (c as i64 - 1) <= left {
                cur.push(c);
                walk(c, left - (c as i64 - 1), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if target >= 0 && n >= 2 {
        walk(n, target, &mut Vec::new(), &mut out);
    }
    out
}

/// All genus-0-valid problems of degree `d` in `P^n`.
pub fn genus0_problems(n: u32, d: u32) -> Vec<ProblemSpec> {
    let target = ProblemSpec {
        n,
        d,
        mu: ConstraintTuple::empty(),
    }
    .genus0_target();
    constraint_tuples(n, target)
        .into_iter()
        .map(|mu| ProblemSpec { n, d, mu })
        .collect()
}

/// All problems of degree `d` in `P^n` satisfying the one-nodal condition.
pub fn nodal_problems(n: u32, d: u32) -> Vec<ProblemSpec> {
    let target = ProblemSpec {
        n,
        d,
        mu: ConstraintTuple::empty(),
    }
    .nodal_target();
    constraint_tuples(n, target)
        .into_iter()
        .map(|mu| ProblemSpec { n, d, mu })
        .collect()
}

/// Complex dimension `n + 1 − 2k − m` of the space of `k`-tuples with `m`
/// constraints moved to the common point. Negative means empty.
pub fn vbar_dimension(n: u32, k: u32, m: u32) -> i64 {
    n as i64 + 1 - 2 * k as i64 - m as i64
}

/// Every invariant the library can compute or cache.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InvariantKey {
    Rational(ProblemSpec),
    Descendant {
        spec: ProblemSpec,
        b: u32,
        c: u32,
    },
    EtaTilde {
        spec: ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    },
    Eta {
        spec: ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    },
    Cr1(ProblemSpec),
    Nodal(ProblemSpec),
}

pub const KEY_VERSION: &str = "v1";

impl InvariantKey {
    pub fn kind(&self) -> &'static str {
        match self {
            InvariantKey::Rational(_) => "rational",
            InvariantKey::Descendant { .. } => "descendant",
            InvariantKey::EtaTilde { .. } => "eta_tilde",
            InvariantKey::Eta { .. } => "eta",
            InvariantKey::Cr1(_) => "cr1",
            InvariantKey::Nodal(_) => "nodal",
        }
    }

    pub fn spec(&self) -> &ProblemSpec {
        match self {
            InvariantKey::Rational(s) | InvariantKey::Cr1(s) | InvariantKey::Nodal(s) => s,
            InvariantKey::Descendant { spec, .. }
            | InvariantKey::EtaTilde { spec, .. }
            | InvariantKey::Eta { spec, .. } => spec,
        }
    }

    fn extra(&self) -> String {
        match self {
            InvariantKey::Descendant { b, c, .. } => format!("b={b},c={c}"),
            InvariantKey::EtaTilde { k, m, l, r, .. } | InvariantKey::Eta { k, m, l, r, .. } => {
                format!("k={k},m={m},l={l},r={r}")
            }
            _ => String::new(),
        }
    }
}

/// `v1|kind|n|d|sorted-codims|extra-params`.
pub fn canonical_key(key: &InvariantKey) -> String {
    let spec = key.spec();
    format!(
        "{KEY_VERSION}|{}|{}|{}|{}|{}",
        key.kind(),
        spec.n,
        spec.d,
        spec.mu.joined(),
        key.extra()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, d: u32, codims: &[u32]) -> ProblemSpec {
        ProblemSpec::new(n, d, codims.to_vec()).unwrap()
    }

    fn table_mu(counts: &[usize]) -> Vec<u32> {
        counts
            .iter()
            .enumerate()
            .flat_map(|(i, &cnt)| std::iter::repeat_n(i as u32 + 2, cnt))
            .collect()
    }

    #[test]
    fn enumerated_problems_are_valid() {
        let lines = genus0_problems(3, 1);
        assert_eq!(
            lines
                .iter()
                .map(|s| s.mu.codims().to_vec())
                .collect::<Vec<_>>(),
            vec![vec![3, 3], vec![3, 2, 2], vec![2, 2, 2, 2]]
        );
        for n in 2..=4 {
            for d in 1..=3 {
                assert!(genus0_problems(n, d).iter().all(validate_genus0));
                let nodal = nodal_problems(n, d);
                assert!(!nodal.is_empty());
                assert!(nodal.iter().all(validate_nodal));
            }
        }
        assert!(constraint_tuples(3, -1).is_empty());
        assert_eq!(constraint_tuples(3, 0), vec![ConstraintTuple::empty()]);
    }

    #[test]
    fn total_codim_examples() {
        assert_eq!(total_codim(&ConstraintTuple::new(vec![2, 2]).unwrap()), 2);
        assert_eq!(
            total_codim(&ConstraintTuple::new(table_mu(&[5, 5])).unwrap()),
            15
        );
        assert_eq!(total_codim(&ConstraintTuple::empty()), 0);
    }

    #[test]
    fn genus0_examples() {
        assert!(validate_genus0(&spec(2, 1, &[2, 2])));
        assert!(validate_genus0(&spec(3, 1, &[3, 2, 2])));
        assert!(!validate_genus0(&spec(2, 1, &[2])));
    }

    #[test]
    fn nodal_examples() {
        assert!(validate_nodal(&spec(3, 4, &table_mu(&[5, 5]))));
        assert!(!validate_nodal(&spec(2, 2, &[2, 2])));
        assert!(validate_nodal(&spec(6, 6, &table_mu(&[2, 1, 1, 1, 6]))));
        assert!(validate_nodal(&spec(4, 4, &table_mu(&[5, 1, 4]))));
        assert!(validate_nodal(&spec(5, 4, &table_mu(&[5, 1, 0, 4]))));
        assert!(validate_nodal(&spec(5, 6, &table_mu(&[2, 1, 1, 7]))));
    }

    #[test]
    fn dimension_mismatch_reports_targets() {
        let err = spec(2, 2, &[2, 2]).require_nodal().unwrap_err();
        match err {
            Error::DimensionMismatch {
                expected, actual, ..
            } => {
                assert_eq!((expected, actual), (5, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn vbar_dimension_examples() {
        assert_eq!(vbar_dimension(3, 1, 0), 2);
        assert_eq!(vbar_dimension(3, 2, 0), 0);
        assert_eq!(vbar_dimension(3, 2, 1), -1);
        for n in 2..10 {
            assert_eq!(vbar_dimension(n, 1, 0), n as i64 - 1);
        }
    }

    #[test]
    fn rejects_bad_constraints() {
        assert!(ProblemSpec::new(2, 1, vec![1]).is_err());
        assert!(ProblemSpec::new(2, 1, vec![3]).is_err());
        assert!(ProblemSpec::new(1, 1, vec![]).is_err());
        assert!(ProblemSpec::new(3, 0, vec![]).is_err());
    }

    #[test]
    fn keys_are_canonical() {
        let a = InvariantKey::Rational(spec(3, 1, &[2, 3, 2]));
        let b = InvariantKey::Rational(spec(3, 1, &[2, 2, 3]));
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_eq!(canonical_key(&a), "v1|rational|3|1|3,2,2|");
        let c = InvariantKey::Descendant {
            spec: spec(3, 1, &[2, 2, 3]),
            b: 0,
            c: 0,
        };
        assert_ne!(canonical_key(&a), canonical_key(&c));
        assert_eq!(canonical_key(&c), "v1|descendant|3|1|3,2,2|b=0,c=0");
    }

    #[test]
    fn nodal_condition_ignores_order() {
        let a = spec(3, 2, &[2, 3, 2, 2, 2, 2]);
        let b = spec(3, 2, &[2, 2, 2, 2, 2, 3]);
        assert_eq!(validate_nodal(&a), validate_nodal(&b));
        assert_eq!(a, b);
    }
}
