//! Tautological intersection numbers `<a^l η̃_r, [V̄_{k,m}(μ)]>` and
//! `<a^l η_r, [V̄_{k,m}(μ)]>`.
//!
//! A point of `V̄_{k,m}(μ)` is an unordered `k`-tuple of genus-0 stable maps,
//! each with a special marked point `∞_i`, all `∞_i` sent to one point of
//! `P^n` that also lies on the `m` constraints in `M_0`. The `η̃` numbers are
//! evaluated by summing over ordered splits of the degree and of the
//! constraints, expanding the small diagonal of `(P^n)^k` by Künneth, and
//! dividing by `k!`. Each ordered configuration is then a product of one-point
//! descendants. The class `a` and the `M_0` constraints are put on the first
//! component.
//!
//! The `η` numbers come from inverting the triangular binomial transform
//! `η̃(m) = Σ_{m* >= m} C(m*, m) k^{m*-m} η(m*)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::ValueStore;
use crate::combinatorics::{binomial, compositions, homog_monomials};
use crate::error::Result;
use crate::genus0::Genus0Engine;
use crate::problem::{canonical_key, vbar_dimension, ConstraintTuple, InvariantKey, ProblemSpec};
use crate::ExactRational;

/// One ordered configuration contributing to a `V̄_{k,m}` number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitConfiguration {
    /// Positive degrees of the components, summing to `d`.
    pub degrees: Vec<u32>,
    /// Constraints moved to the common point.
    pub node_constraints: ConstraintTuple,
    /// Constraints carried by each component.
    pub distribution: Vec<ConstraintTuple>,
    pub psi_exponents: Vec<u32>,
    pub diagonal_exponents: Vec<u32>,
}

impl SplitConfiguration {
    /// Codimension inserted at the special point of each component when the
    /// common point also carries `a^l`.
    pub fn insertions(&self, l: u32) -> Vec<u32> {
        let node: u32 = self.node_constraints.codims().iter().sum();
        let mut out = self.diagonal_exponents.clone();
        out[0] += l + node;
        out
    }
}

/// All `k`-tuples `0 <= e_i <= n` with `Σ e_i = (k−1)n`, lexicographically
/// descending: the Künneth terms of the small diagonal in `(P^n)^k`.
pub fn diagonal_exponents(k: usize, n: u32) -> Vec<Vec<u32>> {
    let target = (k as u32).saturating_sub(1) * n;
    homog_monomials(k, target)
        .into_iter()
        .filter(|e| e.iter().all(|&x| x <= n))
        .collect()
}

fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ordered distributions of a multiset (as counts) into `k` parts, with the
/// number of labeled assignments realizing each.
fn distributions(counts: &[u8], k: usize) -> Vec<(Vec<Vec<u8>>, BigInt)> {
    let mut out = vec![(vec![vec![0u8; counts.len()]; k], BigInt::one())];
    for (c, &cnt) in counts.iter().enumerate() {
        if cnt == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (parts, weight) in &out {
            for split in homog_monomials(k, cnt as u32) {
                let mut parts = parts.clone();
                let mut w = weight.clone();
                let mut left = cnt as u64;
                for (i, &take) in split.iter().enumerate() {
                    parts[i][c] = take as u8;
                    w *= binomial(left, take as i64);
                    left -= take as u64;
                }
                next.push((parts, w));
            }
        }
        out = next;
    }
    out
}

fn sub_multisets(counts: &[u8], size: usize) -> Vec<(Vec<u8>, Vec<u8>, BigInt)> {
    let mut out = Vec::new();
    let mut sub = vec![0u8; counts.len()];
    fn walk(
        idx: usize,
        left: usize,
        counts: &[u8],
        sub: &mut Vec<u8>,
        weight: BigInt,
        out: &mut Vec<(Vec<u8>, Vec<u8>, BigInt)>,
    ) {
        if idx == counts.len() {
            if left == 0 {
                let rest = counts.iter().zip(sub.iter()).map(|(a, b)| a - b).collect();
                out.push((sub.clone(), rest, weight));
            }
            return;
        }
        for j in 0..=(counts[idx] as usize).min(left) {
            sub[idx] = j as u8;
            let w = &weight * binomial(counts[idx] as u64, j as i64);
            walk(idx + 1, left - j, counts, sub, w, out);
        }
        sub[idx] = 0;
    }
    walk(0, size, counts, &mut sub, BigInt::one(), &mut out);
    out
}

fn codims_of(counts: &[u8]) -> ConstraintTuple {
    let codims = counts
        .iter()
        .enumerate()
        .rev()
        .flat_map(|(c, &x)| std::iter::repeat_n(c as u32, x as usize))
        .collect();
    ConstraintTuple::new(codims).expect("codimensions from a valid problem")
}

/// The configurations that can contribute to `<a^l η̃_r, [V̄_{k,m}(μ)]>`, each
/// with the number of labeled constraint assignments it stands for. Only
/// configurations where every factor has the right dimension are listed; the
/// diagonal exponents are then forced.
pub fn split_configurations(
    spec: &ProblemSpec,
    k: u32,
    m: u32,
    l: u32,
    r: u32,
) -> Vec<(SplitConfiguration, BigInt)> {
    let n = spec.n as i64;
    let k = k as usize;
    let counts = spec.mu.counts(spec.n);
    let diagonal_total = (k as i64 - 1) * n;
    let monomials = homog_monomials(k, r);
    let mut out = Vec::new();
    for (node, rest, node_weight) in sub_multisets(&counts, m as usize) {
        let node_codim: i64 = node
            .iter()
            .enumerate()
            .map(|(c, &x)| c as i64 * x as i64)
            .sum();
        let shift = l as i64 + node_codim;
        let parts_all = distributions(&rest, k);
        for degrees in compositions(spec.d, k) {
            for (parts, part_weight) in &parts_all {
                // b_i + c_i is forced by the dimension of each factor
                let budget: Vec<i64> = degrees
                    .iter()
                    .zip(parts)
                    .map(|(&d_i, part)| {
                        let marked: i64 = part.iter().map(|&x| x as i64).sum::<i64>() + 1;
                        let used: i64 = part
                            .iter()
                            .enumerate()
                            .map(|(c, &x)| c as i64 * x as i64)
                            .sum();
                        (n + 1) * d_i as i64 + n - 3 + marked - used
                    })
                    .collect();
                for psi in &monomials {
                    let diagonal: Vec<i64> = (0..k)
                        .map(|i| budget[i] - psi[i] as i64 - if i == 0 { shift } else { 0 })
                        .collect();
                    if diagonal.iter().any(|e| !(0..=n).contains(e))
                        || diagonal.iter().sum::<i64>() != diagonal_total
                    {
                        continue;
                    }
                    let config = SplitConfiguration {
                        degrees: degrees.clone(),
                        node_constraints: codims_of(&node),
                        distribution: parts.iter().map(|p| codims_of(p)).collect(),
                        psi_exponents: psi.clone(),
                        diagonal_exponents: diagonal.iter().map(|&e| e as u32).collect(),
                    };
                    out.push((config, &node_weight * part_weight));
                }
            }
        }
    }
    out
}

/// Intersection numbers on the spaces `V̄_{k,m}(μ)` for one target `P^n`.
#[derive(Debug)]
pub struct VbarIntersections {
    engine: Genus0Engine,
    memo: RwLock<HashMap<InvariantKey, ExactRational>>,
    store: Option<Arc<dyn ValueStore>>,
}

impl VbarIntersections {
    pub fn new(n: u32) -> Self {
        Self {
            engine: Genus0Engine::new(n),
            memo: RwLock::default(),
            store: None,
        }
    }

    /// Like [`VbarIntersections::new`], also reading and recording every
    /// `η̃`/`η` number through `store`.
    pub fn with_store(n: u32, store: Arc<dyn ValueStore>) -> Self {
        Self {
            store: Some(store),
            ..Self::new(n)
        }
    }

    fn remembered(&self, key: &InvariantKey) -> Option<ExactRational> {
        if let Some(v) = self.memo.read().unwrap().get(key) {
            return Some(v.clone());
        }
        let found = self.store.as_ref()?.lookup(&canonical_key(key))?;
        self.memo
            .write()
            .unwrap()
            .insert(key.clone(), found.clone());
        Some(found)
    }

    fn remember(&self, key: InvariantKey, value: &ExactRational) {
        if let Some(store) = &self.store {
            store.record(&canonical_key(&key), value);
        }
        self.memo.write().unwrap().insert(key, value.clone());
    }

    pub fn n(&self) -> u32 {
        self.engine.n()
    }

    pub fn engine(&self) -> &Genus0Engine {
        &self.engine
    }

    /// `<a^l η̃_r, [V̄_{k,m}(μ)]>`; zero unless `l + r = n + 1 − 2k − m`.
    pub fn eta_tilde_number(
        &self,
        spec: &ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    ) -> Result<ExactRational> {
        spec.require_nodal()?;
        assert!(k >= 1);
        if l as i64 + r as i64 != vbar_dimension(spec.n, k, m) {
            return Ok(ExactRational::zero());
        }
        let key = InvariantKey::EtaTilde {
            spec: spec.clone(),
            k,
            m,
            l,
            r,
        };
        if let Some(v) = self.remembered(&key) {
            return Ok(v);
        }
        let value = self.eta_tilde_uncached(spec, k, m, l, r);
        self.remember(key, &value);
        Ok(value)
    }

    fn eta_tilde_uncached(
        &self,
        spec: &ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    ) -> ExactRational {
        let n = spec.n;
        let mut acc = BigInt::zero();
        let mut acc_frac = ExactRational::zero();
        for (config, weight) in split_configurations(spec, k, m, l, r) {
            let mut product = ExactRational::one();
            for (i, c) in config.insertions(l).into_iter().enumerate() {
                let f = self.engine.descendant_counts(
                    config.degrees[i],
                    config.psi_exponents[i],
                    c,
                    &config.distribution[i].counts(n),
                );
                product *= f;
                if product.is_zero() {
                    break;
                }
            }
            if product.is_zero() {
                continue;
            }
            if product.is_integer() {
                acc += weight * product.to_integer();
            } else {
                acc_frac += ExactRational::from_integer(weight) * product;
            }
        }
        (ExactRational::from_integer(acc) + acc_frac) / ExactRational::from_integer(factorial(k))
    }

    /// `<a^l η_r, [V̄_{k,m}(μ)]>` by inverting the binomial transform relating it
    /// to the `η̃` numbers.
    pub fn eta_number(
        &self,
        spec: &ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    ) -> Result<ExactRational> {
        spec.require_nodal()?;
        if l as i64 + r as i64 != vbar_dimension(spec.n, k, m) {
            return Ok(ExactRational::zero());
        }
        let key = InvariantKey::Eta {
            spec: spec.clone(),
            k,
            m,
            l,
            r,
        };
        if let Some(v) = self.remembered(&key) {
            return Ok(v);
        }
        let mut acc = ExactRational::zero();
        let mut m_star = m;
        while m_star as usize <= spec.mu.len() {
            let dim = vbar_dimension(spec.n, k, m_star) - l as i64;
            if dim < 0 {
                break;
            }
            let coeff = binomial(m_star as u64, m as i64)
                * num_traits::pow(BigInt::from(k), (m_star - m) as usize);
            let term = ExactRational::from_integer(coeff)
                * self.eta_tilde_number(spec, k, m_star, l, dim as u32)?;
            if (m_star - m).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
            m_star += 1;
        }
        self.remember(key, &acc);
        Ok(acc)
    }

    /// `Σ_{m* >= m} C(m*, m) k^{m*-m} <a^l η_{r'}, [V̄_{k,m*}(μ)]>` with `r'`
    /// fixed by dimension; equals [`Self::eta_tilde_number`].
    pub fn eta_tilde_forward(
        &self,
        spec: &ProblemSpec,
        k: u32,
        m: u32,
        l: u32,
        r: u32,
    ) -> Result<ExactRational> {
        spec.require_nodal()?;
        if l as i64 + r as i64 != vbar_dimension(spec.n, k, m) {
            return Ok(ExactRational::zero());
        }
        let mut acc = ExactRational::zero();
        for m_star in m..=spec.mu.len() as u32 {
            let dim = vbar_dimension(spec.n, k, m_star) - l as i64;
            if dim < 0 {
                break;
            }
            let coeff = binomial(m_star as u64, m as i64)
                * num_traits::pow(BigInt::from(k), (m_star - m) as usize);
            acc += ExactRational::from_integer(coeff)
                * self.eta_number(spec, k, m_star, l, dim as u32)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodal(n: u32, d: u32, codims: &[u32]) -> ProblemSpec {
        let spec = ProblemSpec::new(n, d, codims.to_vec()).unwrap();
        spec.require_nodal().unwrap();
        spec
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_exponents(1, 4), vec![vec![0]]);
        assert_eq!(
            diagonal_exponents(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        let three = diagonal_exponents(3, 2);
        assert_eq!(three.len(), 6);
        assert!(three
            .iter()
            .all(|e| e.iter().sum::<u32>() == 4 && e.iter().all(|&x| x <= 2)));
    }

    #[test]
    fn distribution_weights_count_assignments() {
        // 3 labeled constraints into 2 parts: 2^3 assignments
        let total: BigInt = distributions(&[0, 0, 2, 1], 2)
            .into_iter()
            .map(|(_, w)| w)
            .sum();
        assert_eq!(total, BigInt::from(8));
        let total: BigInt = sub_multisets(&[0, 0, 2, 1], 2)
            .into_iter()
            .map(|(_, _, w)| w)
            .sum();
        assert_eq!(total, BigInt::from(3));
    }

    #[test]
    fn single_component_is_a_descendant() {
        let spec = nodal(3, 2, &[2; 7]);
        let vbar = VbarIntersections::new(3);
        for l in 0..=2u32 {
            let r = 2 - l;
            let got = vbar.eta_tilde_number(&spec, 1, 0, l, r).unwrap();
            let want = vbar.engine().descendant_counts(2, r, l, &spec.mu.counts(3));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn configurations_respect_their_invariants() {
        let spec = nodal(3, 2, &[2; 7]);
        let configs = split_configurations(&spec, 2, 0, 0, 0);
        assert!(!configs.is_empty());
        for (c, weight) in &configs {
            assert_eq!(c.degrees, vec![1, 1]);
            assert_eq!(c.diagonal_exponents.iter().sum::<u32>(), 3);
            assert_eq!(c.distribution.iter().map(|p| p.len()).sum::<usize>(), 7);
            assert!(c.node_constraints.is_empty());
            assert!(*weight > BigInt::zero());
        }
        let moved = split_configurations(&spec, 1, 2, 0, 0);
        assert!(moved
            .iter()
            .all(|(c, w)| c.node_constraints.len() == 2 && *w == BigInt::from(21)));
    }

    #[test]
    fn mismatched_pairing_is_zero() {
        let spec = nodal(3, 2, &[2; 7]);
        let vbar = VbarIntersections::new(3);
        assert!(vbar.eta_tilde_number(&spec, 1, 0, 1, 0).unwrap().is_zero());
        assert!(vbar.eta_number(&spec, 2, 0, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn requires_nodal_condition() {
        let spec = ProblemSpec::new(2, 2, vec![2, 2]).unwrap();
        assert!(VbarIntersections::new(2)
            .eta_tilde_number(&spec, 1, 0, 0, 0)
            .is_err());
    }
}
