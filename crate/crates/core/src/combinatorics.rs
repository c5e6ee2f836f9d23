//! Integer combinatorics behind the correction term: binomials, set-partition
//! counts, the signed weights `Θ(k, m)` and monomial enumeration.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ExactRational;

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of ways to split a set of `k_star` elements into `k` nonempty blocks.
///
/// Evaluated with the recursion `θ_{k*}^k = k θ_{k*-1}^k + θ_{k*-1}^{k-1}`,
/// seeded by `θ_k^k = 1` and `θ_{k*}^1 = 1`.
pub fn stirling_split(k_star: u32, k: u32) -> BigInt {
    if k == 0 && k_star == 0 {
        // the empty set has one split, into no blocks
        return BigInt::one();
    }
    if k == 0 || k > k_star {
        return BigInt::zero();
    }
    // row[j] holds θ_{i}^{j} for the current i
    let mut row = vec![BigInt::zero(); k as usize + 1];
    row[1] = BigInt::one();
    for i in 2..=k_star {
        let top = (i.min(k)) as usize;
        for j in (2..=top).rev() {
            if j == i as usize {
                row[j] = BigInt::one();
            } else {
                row[j] = BigInt::from(j) * &row[j] + &row[j - 1];
            }
        }
    }
    row[k as usize].clone()
}

/// `(-1)^{k+m-1} k^m (k-1)!`.
pub fn theta_closed(k: u32, m: u32) -> ExactRational {
    assert!(k >= 1, "Θ(k, m) needs k >= 1");
    let mut value = num_traits::pow(BigInt::from(k), m as usize);
    for i in 2..k {
        value *= BigInt::from(i);
    }
    if (k + m - 1) % 2 == 1 {
        value = -value;
    }
    ExactRational::from_integer(value)
}

/// Memo of `Θ(k, m)` evaluated through its defining recursion.
///
/// Lookups take a shared lock; inserts take the write lock after the value is
/// computed, so recursion never holds a lock.
#[derive(Debug, Default)]
pub struct ThetaTable {
    entries: RwLock<HashMap<(u32, u32), ExactRational>>,
}

impl ThetaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Θ(1, 0) = 1` and, for `(k*, m*) > (1, 0)`,
    /// `Θ(k*, m*) = -Σ_{(1,0) <= (k,m) < (k*,m*)} C(m*, m) k^{m*-m} θ_{k*}^k Θ(k, m)`.
    pub fn theta(&self, k_star: u32, m_star: u32) -> ExactRational {
        assert!(k_star >= 1, "Θ(k, m) needs k >= 1");
        if let Some(v) = self.entries.read().unwrap().get(&(k_star, m_star)) {
            return v.clone();
        }
        let value = if (k_star, m_star) == (1, 0) {
            ExactRational::one()
        } else {
            let mut acc = ExactRational::zero();
            for k in 1..=k_star {
                let split = stirling_split(k_star, k);
                if split.is_zero() {
                    continue;
                }
                for m in 0..=m_star {
                    if (k, m) == (k_star, m_star) {
                        continue;
                    }
                    let weight = binomial(m_star as u64, m as i64)
                        * num_traits::pow(BigInt::from(k), (m_star - m) as usize)
                        * &split;
                    acc += ExactRational::from_integer(weight) * self.theta(k, m);
                }
            }
            -acc
        };
        self.entries
            .write()
            .unwrap()
            .insert((k_star, m_star), value.clone());
        value
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Θ(k, m)` through the recursion, with a throwaway memo.
pub fn theta_recursive(k: u32, m: u32) -> ExactRational {
    ThetaTable::new().theta(k, m)
}

/// Exponent vectors of all degree-`l` monomials in `k` variables, in
/// lexicographically descending order.
pub fn homog_monomials(k: usize, l: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 {
        if l == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(k);
    fill_monomials(k, l, &mut current, &mut out);
    out
}

fn fill_monomials(k: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() + 1 == k {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for head in (0..=remaining).rev() {
        current.push(head);
        fill_monomials(k, remaining - head, current, out);
        current.pop();
    }
}

/// Ordered `k`-tuples of positive integers summing to `d`, lexicographically
/// ascending. Empty when `k > d`.
pub fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 || k as u32 > d {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    fill_compositions(d, k, &mut current, &mut out);
    out
}

fn fill_compositions(remaining: u32, k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let slots_left = k - current.len();
    if slots_left == 1 {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for head in 1..=remaining - (slots_left as u32 - 1) {
        current.push(head);
        fill_compositions(remaining - head, k, current, out);
        current.pop();
    }
}
