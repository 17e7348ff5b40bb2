//! Partitions, dominant weights and the dominance orders of types A and C.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are trimmed; anything else out of order is an error.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ShapeMismatch(format!("{parts:?} is not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (0..first).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts }
    }

    /// Parts padded with zeros to length `m`. Panics if `m` is too short.
    pub fn padded(&self, m: usize) -> Vec<i64> {
        assert!(self.len() <= m, "partition {self} longer than {m}");
        let mut v: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        v.resize(m, 0);
        v
    }

    /// Cells in row-major order as (row, col).
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `d`, largest first in lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    partitions_bounded(d, usize::MAX)
}

/// Partitions of `d` with at most `max_len` parts.
pub fn partitions_bounded(d: usize, max_len: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            go(rest - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, max_len, &mut Vec::new(), &mut out);
    out
}

/// Weakly decreasing integer weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    entries: Vec<i64>,
}

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ShapeMismatch(format!("{entries:?} is not dominant")));
        }
        Ok(DominantWeight { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn from_partition(p: &Partition, m: usize) -> Self {
        DominantWeight { entries: p.padded(m) }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn prefix_le(mu: &[i64], lambda: &[i64]) -> bool {
    assert_eq!(mu.len(), lambda.len(), "weights compared at different lengths");
    let (mut a, mut b) = (0i64, 0i64);
    mu.iter().zip(lambda).all(|(x, y)| {
        a += x;
        b += y;
        a <= b
    })
}

/// Prefix sums only, no degree condition.
pub fn leq_1(mu: &[i64], lambda: &[i64]) -> bool {
    prefix_le(mu, lambda)
}

/// Type A dominance: equal totals and prefix sums below.
pub fn leq_a(mu: &[i64], lambda: &[i64]) -> bool {
    prefix_le(mu, lambda) && mu.iter().sum::<i64>() == lambda.iter().sum::<i64>()
}

/// Type C dominance: even nonnegative degree defect and prefix sums below.
pub fn leq_c(mu: &[i64], lambda: &[i64]) -> bool {
    let defect = lambda.iter().sum::<i64>() - mu.iter().sum::<i64>();
    defect >= 0 && defect % 2 == 0 && prefix_le(mu, lambda)
}

/// Pair of partitions indexing a dominant `GL_m` weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalShape {
    pub lambda1: Partition,
    pub lambda2: Partition,
    pub m: usize,
}

impl RationalShape {
    pub fn new(lambda1: Partition, lambda2: Partition, m: usize) -> Self {
        RationalShape { lambda1, lambda2, m }
    }

    pub fn is_admissible(&self) -> bool {
        self.lambda1.len() + self.lambda2.len() <= self.m
    }

    pub fn bigrade(&self) -> (usize, usize) {
        (self.lambda1.size(), self.lambda2.size())
    }

    pub fn weight(&self) -> Result<DominantWeight> {
        bracket(&self.lambda1, &self.lambda2, self.m)
    }
}

impl fmt::Display for RationalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lambda1, self.lambda2)
    }
}

/// `λ¹ − reverse(λ²)` padded to length `m`.
pub fn bracket(l1: &Partition, l2: &Partition, m: usize) -> Result<DominantWeight> {
    if l1.len() + l2.len() > m {
        return Err(Error::Inadmissible(format!("[{l1},{l2}] needs more than {m} rows")));
    }
    let a = l1.padded(m);
    let mut b = l2.padded(m);
    b.reverse();
    Ok(DominantWeight { entries: a.iter().zip(&b).map(|(x, y)| x - y).collect() })
}

pub fn unbracket(w: &DominantWeight) -> RationalShape {
    let m = w.len();
    let l1 = w.entries.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
    let l2 = w.entries.iter().rev().filter(|&&x| x < 0).map(|&x| (-x) as usize).collect();
    RationalShape { lambda1: Partition { parts: l1 }, lambda2: Partition { parts: l2 }, m }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderTag {
    A,
    C,
}

/// Finite set of dominant weights meant to be downward closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedSet {
    pub weights: BTreeSet<DominantWeight>,
    pub order: OrderTag,
}

impl SaturatedSet {
    pub fn new(weights: impl IntoIterator<Item = DominantWeight>, order: OrderTag) -> Self {
        SaturatedSet { weights: weights.into_iter().collect(), order }
    }

    pub fn contains(&self, w: &DominantWeight) -> bool {
        self.weights.contains(w)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn leq(&self, mu: &DominantWeight, lambda: &DominantWeight) -> bool {
        match self.order {
            OrderTag::A => leq_a(&mu.entries, &lambda.entries),
            OrderTag::C => leq_c(&mu.entries, &lambda.entries),
        }
    }

    /// All dominant weights that could lie below a member of the set: same
    /// length, entries within the set's range, and for type C nonnegative
    /// with size capped by the largest member.
    pub fn default_universe(&self) -> Vec<DominantWeight> {
        let Some(first) = self.weights.iter().next() else { return Vec::new() };
        let m = first.len();
        let lo = self.weights.iter().flat_map(|w| w.entries.last().copied()).min().unwrap_or(0);
        let hi = self.weights.iter().flat_map(|w| w.entries.first().copied()).max().unwrap_or(0);
        match self.order {
            OrderTag::A => {
                let sums: BTreeSet<i64> = self.weights.iter().map(DominantWeight::sum).collect();
                dominant_weights(m, lo, hi).into_iter().filter(|w| sums.contains(&w.sum())).collect()
            }
            OrderTag::C => {
                let cap = self.weights.iter().map(DominantWeight::sum).max().unwrap_or(0);
                dominant_weights(m, 0, hi.max(0)).into_iter().filter(|w| w.sum() <= cap).collect()
            }
        }
    }
}

/// Downward closure test against a caller supplied universe.
pub fn is_saturated(pi: &SaturatedSet, universe: &[DominantWeight]) -> bool {
    pi.weights.iter().all(|lambda| {
        universe.iter().filter(|mu| mu.len() == lambda.len()).all(|mu| !pi.leq(mu, lambda) || pi.contains(mu))
    })
}

/// Every weakly decreasing `m`-tuple with entries in `lo..=hi`.
pub fn dominant_weights(m: usize, lo: i64, hi: i64) -> Vec<DominantWeight> {
    fn go(m: usize, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<DominantWeight>) {
        if cur.len() == m {
            out.push(DominantWeight { entries: cur.clone() });
            return;
        }
        for x in (lo..=cap).rev() {
            cur.push(x);
            go(m, lo, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(m, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}

/// The weights `[λ¹,λ²]` with `|λ¹| ≤ r`, `|λ²| ≤ s` and equal defects.
pub fn lambda_rs(m: usize, r: usize, s: usize) -> SaturatedSet {
    let mut out = BTreeSet::new();
    for t in 0..=r.min(s) {
        for l1 in partitions_bounded(r - t, m) {
            for l2 in partitions_bounded(s - t, m - l1.len()) {
                out.insert(bracket(&l1, &l2, m).expect("admissible by construction"));
            }
        }
    }
    SaturatedSet { weights: out, order: OrderTag::A }
}

/// The admissible rational shapes behind [`lambda_rs`].
pub fn rational_shapes_rs(m: usize, r: usize, s: usize) -> Vec<RationalShape> {
    lambda_rs(m, r, s).weights.iter().map(unbracket).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn w(v: &[i64]) -> DominantWeight {
        DominantWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn dominance_examples() {
        assert!(leq_a(&[1, 1], &[2, 0]));
        assert!(leq_a(&[2, 1, 1, 0], &[2, 2, 0, 0]));
        assert!(!leq_a(&[2, 2, 2, 0], &[3, 1, 1, 1]));
        assert!(!leq_a(&[3, 1, 1, 1], &[2, 2, 2, 0]));
        assert!(leq_c(&[0, 0], &[1, 1]));
        assert!(!leq_c(&[1, 0], &[2, 0]));
        assert!(leq_c(&[1, 1], &[2, 0]));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&p(&[1]), &p(&[1]), 2).unwrap(), w(&[1, -1]));
        assert_eq!(bracket(&p(&[2, 1]), &p(&[]), 3).unwrap(), w(&[2, 1, 0]));
        assert_eq!(bracket(&p(&[]), &p(&[2]), 2).unwrap(), w(&[0, -2]));
        assert!(bracket(&p(&[1, 1]), &p(&[1]), 2).is_err());
    }

    #[test]
    fn unbracket_examples() {
        let u = unbracket(&w(&[1, 0, -2]));
        assert_eq!((u.lambda1, u.lambda2), (p(&[1]), p(&[2])));
        let u = unbracket(&w(&[0, 0, 0]));
        assert!(u.lambda1.is_empty() && u.lambda2.is_empty());
        assert_eq!(unbracket(&w(&[3, 3])).lambda1, p(&[3, 3]));
    }

    #[test]
    fn lambda_rs_examples() {
        let l = lambda_rs(2, 1, 1);
        assert_eq!(l.weights.iter().cloned().collect::<Vec<_>>(), vec![w(&[0, 0]), w(&[1, -1])]);
        assert_eq!(lambda_rs(1, 2, 0).weights.into_iter().collect::<Vec<_>>(), vec![w(&[2])]);
        assert_eq!(lambda_rs(3, 0, 0).weights.into_iter().collect::<Vec<_>>(), vec![w(&[0, 0, 0])]);
    }

    #[test]
    fn saturation_examples() {
        let pi = SaturatedSet::new([w(&[0, 0]), w(&[1, 0]), w(&[2, 0]), w(&[1, 1])], OrderTag::A);
        assert!(is_saturated(&pi, &pi.default_universe()));
        let top = SaturatedSet::new([w(&[2, 0])], OrderTag::A);
        assert!(!is_saturated(&top, &top.default_universe()));
        let l = lambda_rs(2, 1, 1);
        assert!(is_saturated(&l, &l.default_universe()));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions_bounded(4, 2).len(), 3);
    }
}
