//! Genus-0 Gromov–Witten invariants of `P^n`: primary counts `n_d(μ)` by
//! associativity (WDVV) reconstruction and one-point descendants by the
//! topological recursion relation.
//!
//! Insertions are stored as a count vector `counts[c]` = number of marked
//! points carrying `h^c`, `0 <= c <= n`. Codimension 0 and 1 insertions are
//! removed with the string and divisor equations before memoization.

pub mod oracles;

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::error::Result;
use crate::problem::{ConstraintTuple, ProblemSpec};
use crate::ExactRational;

/// One factor `<ψ_∞^b ev_∞^* h^c ; Π ev^* h^{c_j}>_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DescendantSpec {
    pub n: u32,
    pub d: u32,
    pub b: u32,
    pub c: u32,
    pub constraints: ConstraintTuple,
}

type DescKey = (u32, u32, u32, Vec<u8>);
type SplitVisitor<'a> = dyn FnMut(&[u8], &[u8], &BigInt) + 'a;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MemoStats {
    pub primaries: usize,
    pub descendants: usize,
}

/// Memoized genus-0 invariants of one target `P^n`.
#[derive(Debug)]
pub struct Genus0Engine {
    n: u32,
    primaries: RwLock<HashMap<(u32, Vec<u8>), BigInt>>,
    descendants: RwLock<HashMap<DescKey, ExactRational>>,
}

fn total(counts: &[u8]) -> i64 {
    counts.iter().map(|&x| x as i64).sum()
}

fn weighted(counts: &[u8]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(c, &x)| c as i64 * x as i64)
        .sum()
}

fn with(counts: &[u8], extra: &[u32]) -> Vec<u8> {
    let mut v = counts.to_vec();
    for &c in extra {
        v[c as usize] += 1;
    }
    v
}

fn without(counts: &[u8], c: usize) -> Vec<u8> {
    let mut v = counts.to_vec();
    v[c] -= 1;
    v
}

/// Calls `f(sub, rest, weight)` for every sub-multiset, where `weight` counts
/// the labeled subsets with that shape.
fn for_each_split(counts: &[u8], mut f: impl FnMut(&[u8], &[u8], &BigInt)) {
    let mut sub = vec![0u8; counts.len()];
    let mut rest = counts.to_vec();
    fn walk(
        idx: usize,
        counts: &[u8],
        sub: &mut Vec<u8>,
        rest: &mut Vec<u8>,
        weight: BigInt,
        f: &mut SplitVisitor,
    ) {
        if idx == counts.len() {
            f(sub, rest, &weight);
            return;
        }
        for j in 0..=counts[idx] {
            sub[idx] = j;
            rest[idx] = counts[idx] - j;
            let w = &weight * binomial(counts[idx] as u64, j as i64);
            walk(idx + 1, counts, sub, rest, w, f);
        }
        sub[idx] = 0;
        rest[idx] = counts[idx];
    }
    walk(0, counts, &mut sub, &mut rest, BigInt::one(), &mut f);
}

impl Genus0Engine {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "target P^n needs n >= 1");
        Self {
            n,
            primaries: RwLock::default(),
            descendants: RwLock::default(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            primaries: self.primaries.read().unwrap().len(),
            descendants: self.descendants.read().unwrap().len(),
        }
    }

    /// `(n+1)d + n − 3 + marked`, the dimension of the moduli space of maps.
    fn moduli_dim(&self, d: u32, marked: i64) -> i64 {
        (self.n as i64 + 1) * d as i64 + self.n as i64 - 3 + marked
    }

    /// Number `n_d(μ)` of rational degree-`d` curves through general linear
    /// constraints `μ`.
    pub fn count_rational(&self, spec: &ProblemSpec) -> Result<ExactRational> {
        assert_eq!(spec.n, self.n, "engine built for a different P^n");
        spec.require_genus0()?;
        let counts = spec.mu.counts(self.n);
        Ok(ExactRational::from_integer(self.primary(spec.d, &counts)))
    }

    /// The descendant invariant of `spec`; zero on dimension mismatch.
    pub fn descendant(&self, spec: &DescendantSpec) -> ExactRational {
        assert_eq!(spec.n, self.n, "engine built for a different P^n");
        if spec.c > self.n || spec.constraints.max_codim() > self.n {
            return ExactRational::zero();
        }
        let counts = spec.constraints.counts(self.n);
        self.descendant_counts(spec.d, spec.b, spec.c, &counts)
    }

    /// Primary invariant `<h^{c_1}, …, h^{c_N}>_{0,d}` for arbitrary
    /// codimensions `0 <= c_i <= n`.
    pub fn primary(&self, d: u32, counts: &[u8]) -> BigInt {
        debug_assert_eq!(counts.len(), self.n as usize + 1);
        let marked = total(counts);
        if weighted(counts) != self.moduli_dim(d, marked) {
            return BigInt::zero();
        }
        if d == 0 {
            return if marked == 3 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        if counts[0] > 0 {
            return BigInt::zero();
        }
        if counts[1] > 0 {
            return BigInt::from(d) * self.primary(d, &without(counts, 1));
        }
        let key = (d, counts.to_vec());
        if let Some(v) = self.primaries.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = self.reconstruct(d, counts);
        self.primaries.write().unwrap().insert(key, value.clone());
        value
    }

    /// Associativity with `(h, h^{c1-1} | h^{c2}, h^{c3})`, where `c1` is the
    /// smallest and `c2` the largest codimension. The only same-degree terms
    /// either lose a marked point or move codimension from `c1` to `c2`, so the
    /// recursion is well founded.
    fn reconstruct(&self, d: u32, counts: &[u8]) -> BigInt {
        let n = self.n;
        let marked = total(counts);
        if marked < 3 {
            // only the line through two points survives the dimension count
            return if marked == 2 && d == 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let c1 = counts.iter().position(|&x| x > 0).unwrap() as u32;
        let rest = without(counts, c1 as usize);
        let c2 = rest.iter().rposition(|&x| x > 0).unwrap() as u32;
        let rest = without(&rest, c2 as usize);
        let c3 = rest.iter().rposition(|&x| x > 0).unwrap() as u32;
        let s = without(&rest, c3 as usize);
        let dd = BigInt::from(d);

        let mut acc = BigInt::zero();
        if c2 < n {
            acc += self.primary(d, &with(&s, &[c2 + 1, c1 - 1, c3]));
        }
        if c1 + c3 - 1 <= n {
            acc += &dd * self.primary(d, &with(&s, &[c2, c1 + c3 - 1]));
        }
        if c2 + c3 <= n {
            acc -= &dd * self.primary(d, &with(&s, &[c1 - 1, c2 + c3]));
        }
        for d1 in 1..d {
            let d2 = d - d1;
            let w1 = BigInt::from(d1);
            for_each_split(&s, |s1, s2, weight| {
                // left side: d1 <h^{c1-1}, S1, T_e>_{d1} <T_{n-e}, h^{c2}, h^{c3}, S2>_{d2}
                if let Some(e) = self.node_codim(d1, s1, &[c1 - 1]) {
                    let a = self.primary(d1, &with(s1, &[c1 - 1, e]));
                    if !a.is_zero() {
                        let b = self.primary(d2, &with(s2, &[n - e, c2, c3]));
                        acc -= weight * &w1 * a * b;
                    }
                }
                // right side: d1 <h^{c2}, S1, T_e>_{d1} <T_{n-e}, h^{c1-1}, h^{c3}, S2>_{d2}
                if let Some(e) = self.node_codim(d1, s1, &[c2]) {
                    let a = self.primary(d1, &with(s1, &[c2, e]));
                    if !a.is_zero() {
                        let b = self.primary(d2, &with(s2, &[n - e, c1 - 1, c3]));
                        acc += weight * &w1 * a * b;
                    }
                }
            });
        }
        acc
    }

    /// Codimension `e` of the node insertion that makes a degree-`d` factor with
    /// insertions `s ∪ fixed ∪ {e}` dimensionally admissible.
    fn node_codim(&self, d: u32, s: &[u8], fixed: &[u32]) -> Option<u32> {
        let marked = total(s) + fixed.len() as i64 + 1;
        let used = weighted(s) + fixed.iter().map(|&c| c as i64).sum::<i64>();
        let e = self.moduli_dim(d, marked) - used;
        (0..=self.n as i64).contains(&e).then_some(e as u32)
    }

    /// `<ψ^b h^c ; others>_d` with `others` given as a count vector; codims
    /// above `n` give zero.
    pub fn descendant_counts(&self, d: u32, b: u32, c: u32, others: &[u8]) -> ExactRational {
        debug_assert_eq!(others.len(), self.n as usize + 1);
        if c > self.n {
            return ExactRational::zero();
        }
        let marked = total(others) + 1;
        if b as i64 + c as i64 + weighted(others) != self.moduli_dim(d, marked) {
            return ExactRational::zero();
        }
        if b == 0 {
            return ExactRational::from_integer(self.primary(d, &with(others, &[c])));
        }
        if d == 0 {
            // ∫_{M_{0,m}} ψ^{m-3} = 1 times the point class on P^n
            let ok = marked >= 3 && b as i64 == marked - 3;
            return if ok {
                ExactRational::one()
            } else {
                ExactRational::zero()
            };
        }
        if others[0] > 0 {
            return self.descendant_counts(d, b - 1, c, &without(others, 0));
        }
        let key = (d, b, c, others.to_vec());
        if let Some(v) = self.descendants.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = self.descendant_uncached(d, b, c, others, marked - 1);
        self.descendants.write().unwrap().insert(key, value.clone());
        value
    }

    fn descendant_uncached(
        &self,
        d: u32,
        b: u32,
        c: u32,
        others: &[u8],
        count: i64,
    ) -> ExactRational {
        let n = self.n;
        if count >= 3 && others[1] > 0 {
            // divisor equation with the ψ correction at ∞
            let rest = without(others, 1);
            return ExactRational::from_integer(d.into()) * self.descendant_counts(d, b, c, &rest)
                + self.descendant_counts(d, b - 1, c + 1, &rest);
        }
        if count >= 2 {
            // ψ_∞ = boundary divisor separating ∞ from the two chosen points
            let g2 = others.iter().rposition(|&x| x > 0).unwrap() as u32;
            let rest = without(others, g2 as usize);
            let g3 = rest.iter().rposition(|&x| x > 0).unwrap() as u32;
            let s = without(&rest, g3 as usize);
            let mut acc = ExactRational::zero();
            for d1 in 0..=d {
                let d2 = d - d1;
                for_each_split(&s, |s1, s2, weight| {
                    let marked = total(s1) + 2;
                    let e = self.moduli_dim(d1, marked) - (b as i64 - 1) - c as i64 - weighted(s1);
                    if !(0..=n as i64).contains(&e) {
                        return;
                    }
                    let e = e as u32;
                    let left = self.descendant_counts(d1, b - 1, c, &with(s1, &[e]));
                    if left.is_zero() {
                        return;
                    }
                    let right = self.primary(d2, &with(s2, &[n - e, g2, g3]));
                    if right.is_zero() {
                        return;
                    }
                    acc += left * ExactRational::from_integer(weight * right);
                });
            }
            return acc;
        }
        // too few points for the recursion: add a hyperplane and undo the divisor equation
        let padded = self.descendant_counts(d, b, c, &with(others, &[1]));
        let shifted = self.descendant_counts(d, b - 1, c + 1, others);
        (padded - shifted) / ExactRational::from_integer(d.into())
    }
}
