//! Oracles shared by the integration tests. Nothing here calls the recursions
//! it is used to check.

#![allow(dead_code)]

use nodalcount::genus0::{DescendantSpec, Genus0Engine};
use nodalcount::problem::{ConstraintTuple, ProblemSpec};
use nodalcount::ExactRational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Explicit set partitions of `{0, …, size−1}`, built by inserting each
/// element into an existing block or a new one.
pub fn set_partitions(size: usize) -> Vec<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for x in 0..size {
        let mut next = Vec::new();
        for p in &parts {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        parts = next;
    }
    parts
}

/// Partitions of a `size`-set into exactly `blocks` blocks, by listing them.
pub fn partitions_into(size: usize, blocks: usize) -> BigInt {
    BigInt::from(
        set_partitions(size)
            .iter()
            .filter(|p| p.len() == blocks)
            .count(),
    )
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `<ψ^b h^c>_d` with a single marked point, read off the `H^{n−c}`
/// coefficient of `1 / Π_{j=1}^{d} (j + H)^{n+1}`.
pub fn j_function_descendant(n: u32, d: u32, c: u32) -> ExactRational {
    let top = (n - c) as usize;
    let mut series = vec![ExactRational::zero(); top + 1];
    series[0] = ExactRational::one();
    for j in 1..=d as i64 {
        // (j + H)^{-(n+1)} = Σ_i (−1)^i C(n+i, i) j^{−(n+1)−i} H^i
        let factor: Vec<ExactRational> = (0..=top as i64)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let num = BigInt::from(sign) * binom(n as i64 + i, i);
                let den = num_traits::pow(BigInt::from(j), (n as i64 + 1 + i) as usize);
                ExactRational::new(num, den)
            })
            .collect();
        let mut next = vec![ExactRational::zero(); top + 1];
        for (a, x) in series.iter().enumerate() {
            for (b, y) in factor.iter().enumerate() {
                if a + b <= top {
                    next[a + b] += x * y;
                }
            }
        }
        series = next;
    }
    series.swap_remove(top)
}

/// `<a^l η̃_r, [V̄_{k,m}(μ)]>` by enumerating labeled configurations: which
/// constraints sit at the common point, which component carries each of the
/// others, the ordered degree split, the ψ monomial and the Künneth term of the
/// small diagonal.
pub fn eta_tilde_by_configurations(
    engine: &Genus0Engine,
    spec: &ProblemSpec,
    k: usize,
    m: usize,
    l: u32,
    r: u32,
) -> ExactRational {
    let n = spec.n;
    let codims = spec.mu.codims().to_vec();
    let total_constraints = codims.len();
    let mut acc = ExactRational::zero();

    let degree_splits = ordered_positive_splits(spec.d, k);
    let psi = tuples_with_sum(k, r, u32::MAX);
    let diagonal = tuples_with_sum(k, (k as u32 - 1) * n, n);

    // owner[j] = k means "at the common point"
    let mut owner = vec![0usize; total_constraints];
    loop {
        if owner.iter().filter(|&&o| o == k).count() == m {
            let node_codim: u32 = (0..total_constraints)
                .filter(|&j| owner[j] == k)
                .map(|j| codims[j])
                .sum();
            let carried: Vec<Vec<u32>> = (0..k)
                .map(|i| {
                    (0..total_constraints)
                        .filter(|&j| owner[j] == i)
                        .map(|j| codims[j])
                        .collect()
                })
                .collect();
            for degrees in &degree_splits {
                for b in &psi {
                    for e in &diagonal {
                        let mut product = ExactRational::one();
                        for i in 0..k {
                            let c = if i == 0 { e[0] + l + node_codim } else { e[i] };
                            let factor = if c > n {
                                ExactRational::zero()
                            } else {
                                engine.descendant(&DescendantSpec {
                                    n,
                                    d: degrees[i],
                                    b: b[i],
                                    c,
                                    constraints: ConstraintTuple::new(carried[i].clone()).unwrap(),
                                })
                            };
                            product *= factor;
                            if product.is_zero() {
                                break;
                            }
                        }
                        acc += product;
                    }
                }
            }
        }
        // next assignment in base k+1
        let mut idx = 0;
        loop {
            if idx == total_constraints {
                let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
                return acc / ExactRational::from_integer(fact);
            }
            owner[idx] += 1;
            if owner[idx] <= k {
                break;
            }
            owner[idx] = 0;
            idx += 1;
        }
    }
}

fn ordered_positive_splits(d: u32, k: usize) -> Vec<Vec<u32>> {
    tuples_with_sum(k, d, d)
        .into_iter()
        .filter(|t| t.iter().all(|&x| x >= 1))
        .collect()
}

fn tuples_with_sum(k: usize, sum: u32, cap: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if sum == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=sum.min(cap) {
        for mut rest in tuples_with_sum(k - 1, sum - first, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
