use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Rational;
use crate::Error;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect();
        Self::from_rows(v).expect("ragged literal")
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ExactMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Rational> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn same_dims(&self, other: &Self) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Product; zero entries of `self` are skipped, which pays off for the
    /// 0/1 diagram matrices.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Fraction-free elimination on the rows scaled to integers, which keeps
    /// entry sizes bounded by the minors of the input.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let prow = &head[r];
            for row in tail.iter_mut() {
                for j in c + 1..self.cols {
                    let v = &(&prow[c] * &row[j]) - &(&row[c] * &prow[j]);
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = prow[c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let piv = echelon(&mut rows, self.cols, true);
        (ExactMatrix { rows: self.rows, cols: self.cols, data: rows.into_iter().flatten().collect() }, piv)
    }

    /// An exact solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let mut rows: Vec<Vec<Rational>> =
            (0..self.rows).map(|i| self.row(i).iter().cloned().chain([b[i].clone()]).collect()).collect();
        let piv = echelon(&mut rows, self.cols + 1, true);
        if piv.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut rows = self.to_rows();
        let piv = echelon(&mut rows, self.cols, true);
        let mut is_piv = vec![false; self.cols];
        for &p in &piv {
            is_piv[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_piv[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in piv.iter().enumerate() {
                    v[p] = -&rows[r][f];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Rational, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_rows(self.to_rows()))
    }

    pub fn inverse(&self) -> Result<Option<Self>, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let piv = echelon(&mut rows, 2 * n, true);
        if piv.len() < n || piv[n - 1] >= n {
            return Ok(None);
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Some(ExactMatrix { rows: n, cols: n, data }))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Gaussian elimination in place over the first `width` columns. Pivots on
/// the first nonzero entry found scanning down the current column. Returns the
/// pivot columns; the first `len()` rows are the nonzero echelon rows.
pub(crate) fn echelon(rows: &mut [Vec<Rational>], width: usize, reduced: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let prow = rows[r].clone();
        let (head, tail) = rows.split_at_mut(r + 1);
        let elim = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for j in c..prow.len() {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    row[j] -= &t;
                }
            }
        };
        tail.iter_mut().for_each(elim);
        if reduced {
            head[..r].iter_mut().for_each(elim);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `v` times the lcm of its denominators.
fn integer_row(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    v.iter().map(|x| if x.is_zero() { BigInt::zero() } else { x.numer() * (&l / x.denom()) }).collect()
}

fn det_rows(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let pv = rows[c][c].clone();
        det *= &pv;
        let inv = pv.recip();
        let (head, tail) = rows.split_at_mut(c + 1);
        let prow = &head[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for j in c..n {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    row[j] -= &t;
                }
            }
        }
    }
    det
}

/// Determinant of a small square block given as rows.
pub fn det_of(rows: Vec<Vec<Rational>>) -> Rational {
    det_rows(rows)
}

/// Incrementally grown row space kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..self.width {
                if !row[j].is_zero() {
                    let t = &f * &row[j];
                    v[j] -= &t;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].recip();
        for x in w[p..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..self.width {
                if !w[j].is_zero() {
                    let t = &f * &w[j];
                    row[j] -= &t;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of the vectors orthogonal to every row, one per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        let mut next = 0;
        for f in 0..self.width {
            if next < self.pivots.len() && self.pivots[next] == f {
                next += 1;
                continue;
            }
            let mut v = vec![Rational::zero(); self.width];
            v[f] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(2);
        assert_eq!(id.solve(&[q(3), q(-1)]).unwrap(), Some(vec![q(3), q(-1)]));
        let col = ExactMatrix::from_i64_rows(&[&[1], &[1]]);
        assert_eq!(col.solve(&[q(1), q(2)]).unwrap(), None);
        let two = ExactMatrix::from_i64_rows(&[&[2]]);
        assert_eq!(two.solve(&[q(1)]).unwrap(), Some(vec![Rational::new(1, 2)]));
        assert!(two.solve(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(2).nullspace().is_empty());
        assert_eq!(ExactMatrix::zeros(1, 3).nullspace().len(), 3);
        let ns = ExactMatrix::from_i64_rows(&[&[1, 1]]).nullspace();
        assert_eq!(ns, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant().unwrap(), q(-1));
        let b = ExactMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = b.inverse().unwrap().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert_eq!(ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().unwrap(), None);
    }

    #[test]
    fn rowspace_tracks_rank() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[q(1), q(2), q(3)]));
        assert!(!rs.insert(&[q(2), q(4), q(6)]));
        assert!(rs.insert(&[q(0), q(1), q(1)]));
        assert!(rs.contains(&[q(1), q(3), q(4)]));
        assert!(!rs.contains(&[q(0), q(0), q(1)]));
        assert_eq!(rs.rank(), 2);
    }
}
