//! Sparse polynomials with integer coefficients in matrix-entry variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactla::{ExactMatrix, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
}

/// Matrix entry `x[i,j]` or `y[i,j]`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub block: Block,
    pub i: usize,
    pub j: usize,
}

impl Variable {
    pub fn x(i: usize, j: usize) -> Self {
        Variable { block: Block::X, i, j }
    }

    pub fn y(i: usize, j: usize) -> Self {
        Variable { block: Block::Y, i, j }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.block {
            Block::X => 'x',
            Block::Y => 'y',
        };
        write!(f, "{b}[{},{}]", self.i, self.j)
    }
}

/// Sorted variable/exponent pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// From a multiset of variables.
    pub fn from_vars(vars: impl IntoIterator<Item = Variable>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for v in vars {
            *map.entry(v).or_default() += 1;
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn bigrade(&self) -> Bigrade {
        let mut b = Bigrade { r: 0, s: 0 };
        for (v, e) in &self.0 {
            match v.block {
                Block::X => b.r += *e as usize,
                Block::Y => b.s += *e as usize,
            }
        }
        b
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// The variables repeated by exponent, in variable order.
    pub fn expanded(&self) -> Vec<Variable> {
        self.0.iter().flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize)).collect()
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on exponent vectors over `(block, i, j)`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bigrade {
    pub r: usize,
    pub s: usize,
}

impl Bigrade {
    pub fn new(r: usize, s: usize) -> Self {
        Bigrade { r, s }
    }
}

impl Add for Bigrade {
    type Output = Bigrade;
    fn add(self, o: Bigrade) -> Bigrade {
        Bigrade { r: self.r + o.r, s: self.s + o.s }
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Common bigrade of all terms, if homogeneous.
    pub fn bigrade(&self) -> Option<Bigrade> {
        let mut it = self.terms.keys().map(Monomial::bigrade);
        let Some(first) = it.next() else { return Some(Bigrade::new(0, 0)) };
        it.all(|b| b == first).then_some(first)
    }

    pub fn evaluate(&self, point: &impl Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = Rational::from_bigint(c.clone());
            for (var, e) in m.factors() {
                let x = point.value(*var).ok_or_else(|| Error::MissingVariable(var.to_string()))?;
                v = &v * &x.pow(*e);
            }
            total += v;
        }
        Ok(total)
    }
}

/// Values for matrix-entry variables.
pub trait Assignment {
    fn value(&self, v: Variable) -> Option<Rational>;
}

/// `x` from the first matrix, `y` from the optional second one.
#[derive(Clone, Debug)]
pub struct MatrixPoint<'a> {
    pub x: &'a ExactMatrix,
    pub y: Option<&'a ExactMatrix>,
}

impl Assignment for MatrixPoint<'_> {
    fn value(&self, v: Variable) -> Option<Rational> {
        let m = match v.block {
            Block::X => self.x,
            Block::Y => self.y?,
        };
        (v.i >= 1 && v.j >= 1 && v.i <= m.rows() && v.j <= m.cols()).then(|| m.get(v.i - 1, v.j - 1).clone())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Highest term first, e.g. `3*x[1,2]*y[2,1] - 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.factors().is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Symbolic determinant of `x[rows[a], cols[b]]` by permutation expansion.
pub fn minor_poly(block: Block, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    let mut out = Polynomial::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut sign = BigInt::one();
    heap_permutations(&mut perm, k, &mut sign, &mut |p, s| {
        let m = Monomial::from_vars((0..k).map(|a| Variable { block, i: rows[a], j: cols[p[a]] }));
        out.add_term(m, s.clone());
    });
    out
}

fn heap_permutations(p: &mut Vec<usize>, k: usize, sign: &mut BigInt, f: &mut impl FnMut(&[usize], &BigInt)) {
    if k <= 1 {
        f(p, sign);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(p, k - 1, sign, f);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
        *sign = -sign.clone();
    }
    heap_permutations(p, k - 1, sign, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::var(Variable::x(i, j))
    }

    fn y(i: usize, j: usize) -> Polynomial {
        Polynomial::var(Variable::y(i, j))
    }

    #[test]
    fn ring_examples() {
        assert_eq!((&x(1, 1) * &x(1, 1)).to_string(), "x[1,1]^2");
        assert_eq!(&(&x(1, 1) + &x(1, 2)) + &(-&x(1, 2)), x(1, 1));
        assert!((&Polynomial::zero() * &x(2, 2)).is_zero());
    }

    #[test]
    fn bigrade_examples() {
        assert_eq!((&x(1, 1) * &y(2, 2)).bigrade(), Some(Bigrade::new(1, 1)));
        assert_eq!((&x(1, 1) + &y(1, 1)).bigrade(), None);
        assert_eq!(Polynomial::constant(BigInt::from(5)).bigrade(), Some(Bigrade::new(0, 0)));
    }

    #[test]
    fn evaluate_examples() {
        let id = ExactMatrix::identity(2);
        let det = minor_poly(Block::X, &[1, 2], &[1, 2]);
        assert_eq!(det, &(&x(1, 1) * &x(2, 2)) - &(&x(1, 2) * &x(2, 1)));
        assert_eq!(det.evaluate(&MatrixPoint { x: &id, y: None }).unwrap(), Rational::one());
        let xy = &x(1, 1) * &y(1, 1);
        assert_eq!(xy.evaluate(&MatrixPoint { x: &id, y: Some(&id) }).unwrap(), Rational::one());
        assert!(xy.evaluate(&MatrixPoint { x: &id, y: None }).is_err());
        let zero = ExactMatrix::zeros(2, 2);
        let p = &det + &Polynomial::constant(BigInt::from(7));
        assert_eq!(p.evaluate(&MatrixPoint { x: &zero, y: None }).unwrap(), Rational::from_i64(7));
    }

    #[test]
    fn display_form() {
        let p = &(&x(1, 2) * &y(2, 1)).scale(&BigInt::from(3)) - &Polynomial::constant(BigInt::from(5));
        assert_eq!(p.to_string(), "3*x[1,2]*y[2,1] - 5");
    }

    #[test]
    fn three_by_three_minor_has_six_terms() {
        let d = minor_poly(Block::X, &[1, 2, 3], &[1, 2, 3]);
        assert_eq!(d.len(), 6);
        let id = ExactMatrix::identity(3);
        assert_eq!(d.evaluate(&MatrixPoint { x: &id, y: None }).unwrap(), Rational::one());
    }
}
