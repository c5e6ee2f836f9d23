//! Independent evaluators used to validate the genus-0 engine. None of them
//! shares code with the associativity or recursion paths.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Lines in `P^n` meeting general linear subspaces of the given codimensions,
/// as the top coefficient of `Π σ_{c_i - 1}` on the Grassmannian `G(2, n+1)`,
/// multiplied out with Pieri's rule.
pub fn schubert_lines_oracle(n: u32, codims: &[u32]) -> Result<BigInt> {
    let width = n as i64 - 1;
    let degree: i64 = codims.iter().map(|&c| c as i64 - 1).sum();
    if degree != 2 * width {
        return Err(Error::DimensionMismatch {
            condition: "Σ(c_i − 1) = 2(n−1)",
            expected: 2 * width,
            actual: degree,
        });
    }
    // partitions (λ1, λ2) inside the 2 × (n−1) box
    let mut classes: HashMap<(i64, i64), BigInt> = HashMap::new();
    classes.insert((0, 0), BigInt::one());
    for &c in codims {
        let a = c as i64 - 1;
        if a < 0 || a > width {
            return Ok(BigInt::zero());
        }
        let mut next: HashMap<(i64, i64), BigInt> = HashMap::new();
        for ((l1, l2), coeff) in &classes {
            // μ1 >= λ1 >= μ2 >= λ2 with |μ| = |λ| + a
            for m2 in *l2..=*l1 {
                let m1 = l1 + l2 + a - m2;
                if m1 < *l1 || m1 > width {
                    continue;
                }
                *next.entry((m1, m2)).or_insert_with(BigInt::zero) += coeff;
            }
        }
        classes = next;
    }
    Ok(classes.remove(&(width, width)).unwrap_or_else(BigInt::zero))
}

/// Rational plane curves of degree `d` through `3d − 1` general points, by the
/// classical degree recursion started at one line through two points.
pub fn plane_recursion_oracle(d: u32) -> BigInt {
    assert!(d >= 1);
    let mut counts: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for deg in 2..=d as i64 {
        let mut acc = BigInt::zero();
        for d1 in 1..deg {
            let d2 = deg - d1;
            let left = binomial((3 * deg - 4) as u64, 3 * d1 - 2) * BigInt::from(d2);
            let right = binomial((3 * deg - 4) as u64, 3 * d1 - 1) * BigInt::from(d1);
            let weight = BigInt::from(d1 * d1 * d2) * (left - right);
            acc += weight * &counts[d1 as usize] * &counts[d2 as usize];
        }
        counts.push(acc);
    }
    counts.swap_remove(d as usize)
}

/// `∫ Π ψ_i^{a_i}` over the Deligne–Mumford space `M̄_{0,m}` with one exponent
/// per marked point, reduced by the string equation down to `M̄_{0,3}`.
pub fn psi_moduli_oracle(exponents: &[u32]) -> Result<BigInt> {
    let m = exponents.len() as i64;
    let sum: i64 = exponents.iter().map(|&a| a as i64).sum();
    if m < 3 || sum != m - 3 {
        return Err(Error::DimensionMismatch {
            condition: "Σ a_i = m − 3 on M̄_{0,m}",
            expected: m - 3,
            actual: sum,
        });
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Ok(string_reduce(sorted))
}

fn string_reduce(exps: Vec<u32>) -> BigInt {
    if exps.len() == 3 {
        return BigInt::one();
    }
    // dimension forces a zero exponent once m > 3
    let zero_at = exps.iter().rposition(|&a| a == 0).expect("string point");
    let mut rest = exps;
    rest.remove(zero_at);
    let mut acc = BigInt::zero();
    for i in 0..rest.len() {
        if rest[i] == 0 {
            continue;
        }
        let mut lowered = rest.clone();
        lowered[i] -= 1;
        lowered.sort_unstable_by(|a, b| b.cmp(a));
        acc += string_reduce(lowered);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schubert_examples() {
        assert_eq!(
            schubert_lines_oracle(3, &[2, 2, 2, 2]).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(schubert_lines_oracle(2, &[2, 2]).unwrap(), BigInt::from(1));
        assert_eq!(
            schubert_lines_oracle(4, &[4, 3, 2]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            schubert_lines_oracle(4, &[3, 3, 3]).unwrap(),
            BigInt::from(1)
        );
        // Σ(c−1) = 5 falls short of dim G(2,5) = 6
        assert!(schubert_lines_oracle(4, &[3, 3, 2]).is_err());
        assert!(schubert_lines_oracle(3, &[2, 2]).is_err());
    }

    #[test]
    fn plane_examples() {
        let got: Vec<BigInt> = (1..=5).map(plane_recursion_oracle).collect();
        let want: Vec<BigInt> = [1, 1, 12, 620, 87304]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_moduli_oracle(&[1, 0, 0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(psi_moduli_oracle(&[0, 0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(
            psi_moduli_oracle(&[1, 1, 0, 0, 0]).unwrap(),
            BigInt::from(2)
        );
        assert!(psi_moduli_oracle(&[1, 1, 0]).is_err());
    }
}
