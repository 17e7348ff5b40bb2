//! Straightening on a single generic matrix.
//!
//! Within a bi-content block (row content α, column content β) the standard
//! bideterminants and the monomials with margins (α, β) have the same count,
//! and the standard ones form a basis. Straightening is the exact inverse of
//! that square change of basis, cached per block.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactla::{ExactMatrix, Rational};
use crate::shapes::partitions_bounded;
use crate::tableaux::{enumerate_gl_with_content, Alphabet};

use super::key::Cols;

/// Monomial as a sorted list of `(row letter, column letter)` factors.
pub(crate) type BlockMono = Vec<(usize, usize)>;

struct GlBlock {
    basis: Vec<Cols>,
    monos: HashMap<BlockMono, usize>,
    inverse: Vec<Vec<BigInt>>,
}

/// Blocks keyed by (row content, column content).
type BlockCache = RwLock<HashMap<(Vec<usize>, Vec<usize>), Arc<GlBlock>>>;

pub(crate) struct GlBlocks {
    alphabet: Alphabet,
    cache: BlockCache,
}

impl GlBlocks {
    pub fn new(alphabet: Alphabet) -> Self {
        GlBlocks { alphabet, cache: RwLock::default() }
    }

    fn block(&self, alpha: &[usize], beta: &[usize]) -> Arc<GlBlock> {
        let key = (alpha.to_vec(), beta.to_vec());
        if let Some(b) = self.cache.read().unwrap().get(&key) {
            return b.clone();
        }
        let b = Arc::new(self.build(alpha, beta));
        self.cache.write().unwrap().entry(key).or_insert(b).clone()
    }

    fn build(&self, alpha: &[usize], beta: &[usize]) -> GlBlock {
        let n = self.alphabet.n();
        let d: usize = alpha.iter().sum();
        let mut basis = Vec::new();
        for shape in partitions_bounded(d, n) {
            let left = enumerate_gl_with_content(&shape, &self.alphabet, alpha);
            if left.is_empty() {
                continue;
            }
            let right = enumerate_gl_with_content(&shape, &self.alphabet, beta);
            for s in &left {
                for t in &right {
                    basis.push(Cols::of(s, t));
                }
            }
        }
        let monos: HashMap<BlockMono, usize> =
            contingency_tables(alpha, beta).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        assert_eq!(monos.len(), basis.len(), "standard bitableaux and monomials differ in count");
        let k = basis.len();
        let mut mat = ExactMatrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            for (mono, c) in expand_cols(b) {
                mat.set(monos[&mono], j, Rational::from_i64(c));
            }
        }
        let inv = mat.inverse().expect("square").expect("standard bitableaux span the block");
        let inverse = (0..k)
            .map(|i| inv.row(i).iter().map(|x| x.to_bigint().expect("integral straightening")).collect())
            .collect();
        GlBlock { basis, monos, inverse }
    }

    /// Standard expansion of a block given in column form.
    pub fn straighten(&self, cols: &Cols) -> Vec<(BigInt, Cols)> {
        let n = self.alphabet.n();
        let mut alpha = vec![0; n];
        let mut beta = vec![0; n];
        for &l in cols.left.iter().flatten() {
            alpha[l - 1] += 1;
        }
        for &l in cols.right.iter().flatten() {
            beta[l - 1] += 1;
        }
        let block = self.block(&alpha, &beta);
        let poly = expand_cols(cols);
        let mut out = Vec::new();
        for (row, b) in block.inverse.iter().zip(&block.basis) {
            let mut c = BigInt::zero();
            for (mono, v) in &poly {
                let a = &row[block.monos[mono]];
                if !a.is_zero() {
                    c += a * BigInt::from(*v);
                }
            }
            if !c.is_zero() {
                out.push((c, b.clone()));
            }
        }
        out
    }
}

/// Product of column determinants as a monomial map.
pub(crate) fn expand_cols(cols: &Cols) -> HashMap<BlockMono, i64> {
    let mut acc: HashMap<BlockMono, i64> = HashMap::from([(Vec::new(), 1)]);
    for (l, r) in cols.left.iter().zip(&cols.right) {
        let det = expand_det(l, r);
        let mut next: HashMap<BlockMono, i64> = HashMap::new();
        for (m1, c1) in &acc {
            for (m2, c2) in &det {
                let mut m: BlockMono = m1.iter().chain(m2).copied().collect();
                m.sort_unstable();
                let e = next.entry(m).or_default();
                *e = e.checked_add(c1.checked_mul(*c2).expect("coefficient overflow")).expect("coefficient overflow");
            }
        }
        next.retain(|_, v| *v != 0);
        acc = next;
    }
    acc
}

fn expand_det(rows: &[usize], cols: &[usize]) -> HashMap<BlockMono, i64> {
    let k = rows.len();
    let mut out: HashMap<BlockMono, i64> = HashMap::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, 1, &mut |p, s| {
        let mut m: BlockMono = (0..k).map(|a| (rows[a], cols[p[a]])).collect();
        m.sort_unstable();
        *out.entry(m).or_default() += s;
    });
    out.retain(|_, v| *v != 0);
    out
}

fn permute(p: &mut Vec<usize>, i: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
    if i + 1 >= p.len() {
        f(p, sign);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, if i == j { sign } else { -sign }, f);
        p.swap(i, j);
    }
}

/// Nonnegative integer matrices with the given margins, as factor lists.
fn contingency_tables(alpha: &[usize], beta: &[usize]) -> Vec<BlockMono> {
    fn go(
        i: usize,
        j: usize,
        alpha: &mut Vec<usize>,
        beta: &mut Vec<usize>,
        cur: &mut BlockMono,
        out: &mut Vec<BlockMono>,
    ) {
        let n = alpha.len();
        if i == n {
            if beta.iter().all(|&b| b == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if j == n {
            if alpha[i] == 0 {
                go(i + 1, 0, alpha, beta, cur, out);
            }
            return;
        }
        let hi = alpha[i].min(beta[j]);
        for e in 0..=hi {
            alpha[i] -= e;
            beta[j] -= e;
            cur.extend(std::iter::repeat_n((i + 1, j + 1), e));
            go(i, j + 1, alpha, beta, cur, out);
            cur.truncate(cur.len() - e);
            alpha[i] += e;
            beta[j] += e;
        }
    }
    let mut out = Vec::new();
    go(0, 0, &mut alpha.to_vec(), &mut beta.to_vec(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_enumeration() {
        assert_eq!(contingency_tables(&[1, 1], &[1, 1]).len(), 2);
        assert_eq!(contingency_tables(&[2, 0], &[1, 1]).len(), 1);
        assert_eq!(contingency_tables(&[1, 1, 1], &[1, 1, 1]).len(), 6);
    }

    #[test]
    fn transposition_straightens() {
        let blocks = GlBlocks::new(Alphabet::natural(2));
        let x12x21 = Cols { left: vec![vec![1], vec![2]], right: vec![vec![2], vec![1]] };
        let out = blocks.straighten(&x12x21);
        let row = Cols { left: vec![vec![1], vec![2]], right: vec![vec![1], vec![2]] };
        let det = Cols { left: vec![vec![1, 2]], right: vec![vec![1, 2]] };
        assert_eq!(out.len(), 2);
        assert!(out.contains(&(BigInt::from(1), row)));
        assert!(out.contains(&(BigInt::from(-1), det)));
    }
}
