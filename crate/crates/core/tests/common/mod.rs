//! Closed-form oracles written independently of the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Walled Brauer diagrams: choose `t` horizontal edges on each side, then
/// match the remaining vertical strands.
pub fn walled_diagram_count(r: usize, s: usize) -> u64 {
    (0..=r.min(s))
        .map(|t| {
            let side = binomial(r, t) * binomial(s, t) * factorial(t);
            side * side * factorial(r - t) * factorial(s - t)
        })
        .sum()
}

fn exact_ratio(num: BigInt, den: BigInt) -> u64 {
    assert!((&num % &den).is_zero(), "Weyl quotient is not integral");
    u64::try_from(num / den).expect("fits")
}

/// Weyl dimension of the `GL_m` irreducible of dominant weight `lambda`.
pub fn weyl_gl(lambda: &[i64]) -> u64 {
    let m = lambda.len();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..m {
        for j in i + 1..m {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    exact_ratio(num, den)
}

/// Weyl dimension of the `Sp_{2m}` irreducible of highest weight `lambda`
/// (a partition with at most `m` parts, padded with zeros).
pub fn weyl_sp(lambda: &[usize], m: usize) -> u64 {
    let l: Vec<i64> = (0..m).map(|i| lambda.get(i).copied().unwrap_or(0) as i64 + (m - i) as i64).collect();
    let rho: Vec<i64> = (0..m).map(|i| (m - i) as i64).collect();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..m {
        for j in i + 1..m {
            num *= (l[i] - l[j]) * (l[i] + l[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
        num *= l[i];
        den *= rho[i];
    }
    exact_ratio(num, den)
}

/// Dominant `GL_m` weights `λ` with positive part of size `p ≤ r`,
/// negative part of size `q ≤ s` and `r − p = s − q`.
pub fn lambda_rs(m: usize, r: usize, s: usize) -> Vec<Vec<i64>> {
    fn go(m: usize, lo: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.last().copied().unwrap_or(hi);
        for v in (lo..=top).rev() {
            prefix.push(v);
            go(m, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    go(m, -(s as i64), r as i64, &mut Vec::new(), &mut all);
    all.retain(|w| {
        let p: i64 = w.iter().filter(|&&x| x > 0).sum();
        let q: i64 = -w.iter().filter(|&&x| x < 0).sum::<i64>();
        p <= r as i64 && q <= s as i64 && r as i64 - p == s as i64 - q
    });
    all
}

/// `Σ_{λ ∈ Λ_{r,s}} dim(λ)²`.
pub fn mixed_tensor_envelope_dim(m: usize, r: usize, s: usize) -> u64 {
    lambda_rs(m, r, s).iter().map(|w| weyl_gl(w).pow(2)).sum()
}

/// Subsets of size `k` of `{1′,1,…,m′,m}` meeting King's bound: at most
/// `j` of their letters come from the first `j` pairs, for every `j`.
pub fn king_sets(m: usize, k: usize) -> usize {
    (0u32..1 << (2 * m))
        .filter(|set| set.count_ones() as usize == k)
        .filter(|set| (1..=m).all(|j| (set & ((1 << (2 * j)) - 1)).count_ones() as usize <= j))
        .count()
}

#[test]
fn oracle_sanity() {
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(walled_diagram_count(2, 2), 24);
    assert_eq!(weyl_gl(&[1, -1]), 3);
    assert_eq!(weyl_gl(&[2, 1, 0]), 8);
    assert_eq!(weyl_sp(&[1], 2), 4);
    assert_eq!(weyl_sp(&[1, 1], 2), 5);
    assert_eq!(weyl_sp(&[2], 2), 10);
    assert_eq!(mixed_tensor_envelope_dim(2, 1, 1), 10);
    assert_eq!(king_sets(2, 2), 5);
}
