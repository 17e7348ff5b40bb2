//! Straightening into the standard bases.
//!
//! Non GL-standard blocks are straightened on the generic matrix. Once every
//! block is GL-standard, a first column violating the King (or Stembridge)
//! bound is rewritten with the exterior-algebra relation
//! `(I|J) = Σ a_{JL}^t c_{L′I}^t dᵗ (L′|L)`, right side first, then the mirror
//! relation on the left side. Each step raises the content of one side or
//! lowers the degree, so the recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exterior::{ExtElement, Labelling};
use crate::Result;

use super::key::Key;
use super::{Bitableau, Context, ContextKind, StraightExpr, StraightTerm};

/// `(dpow, key) → coefficient`.
pub(crate) type Lin = BTreeMap<(u32, Key), BigInt>;

/// Memoising straightener; one per worker thread.
pub struct Straightener<'c> {
    ctx: &'c Context,
    memo: HashMap<Key, Rc<Lin>>,
}

fn add_scaled(out: &mut Lin, src: &Lin, c: &BigInt, shift: u32) {
    for ((t, k), v) in src {
        let e = out.entry((t + shift, k.clone())).or_default();
        *e += v * c;
        if e.is_zero() {
            out.remove(&(t + shift, k.clone()));
        }
    }
}

impl<'c> Straightener<'c> {
    pub fn new(ctx: &'c Context) -> Self {
        Straightener { ctx, memo: HashMap::new() }
    }

    pub fn context(&self) -> &Context {
        self.ctx
    }

    pub fn straighten(&mut self, b: &Bitableau) -> Result<StraightExpr> {
        b.check_context(self.ctx)?;
        let key = Key::from_bitableau(b)?;
        let lin = match key.normalize(self.ctx.alphabet()) {
            None => Lin::new(),
            Some((sign, k)) => {
                let mut out = Lin::new();
                add_scaled(&mut out, &self.expand(&k), &BigInt::from(sign), 0);
                out
            }
        };
        Ok(self.to_expr(&lin))
    }

    /// Expansion of a normalized key.
    pub(crate) fn expand(&mut self, key: &Key) -> Rc<Lin> {
        if let Some(v) = self.memo.get(key) {
            return v.clone();
        }
        let v = Rc::new(self.compute(key));
        self.memo.insert(key.clone(), v.clone());
        v
    }

    fn expand_into(&mut self, out: &mut Lin, key: Key, c: &BigInt, shift: u32) {
        if let Some((sign, k)) = key.normalize(self.ctx.alphabet()) {
            let e = self.expand(&k);
            add_scaled(out, &e, &(c * sign), shift);
        }
    }

    fn compute(&mut self, key: &Key) -> Lin {
        let a = self.ctx.alphabet().clone();
        if let Some(bi) = key.0.iter().position(|c| !c.is_gl_standard(&a)) {
            let mut out = Lin::new();
            for (c, std) in self.ctx.caches().gl.straighten(&key.0[bi]) {
                let mut k = key.clone();
                k.0[bi] = std;
                let e = self.expand(&k);
                add_scaled(&mut out, &e, &c, 0);
            }
            return out;
        }
        if self.ctx.kind() != ContextKind::Mat {
            for right in [true, false] {
                let j = self.positions(&key.first_columns(right));
                if !self.ctx.ext().is_standard(&j) {
                    return self.column_relation(key, right, &j);
                }
            }
        }
        Lin::from([((0, key.clone()), BigInt::one())])
    }

    /// Rewrites the first column(s) on side `right` (positions `j`), moving
    /// the paired column(s) on the other side along.
    fn column_relation(&mut self, key: &Key, right: bool, j: &[usize]) -> Lin {
        let ctx = self.ctx;
        let ext = ctx.ext();
        let i = self.positions(&key.first_columns(!right));
        let expansion = ext.expand_positions(&ExtElement::basis(j.to_vec())).expect("homogeneous basis vector");
        let mut out = Lin::new();
        for ((t, l), a) in expansion {
            let l_cols = self.columns(&l);
            for (lp, c) in ext.c_column(t, &i) {
                let lp_cols = self.columns(&lp);
                let k = key.with_first_columns(right, &l_cols).with_first_columns(!right, &lp_cols);
                self.expand_into(&mut out, k, &(&a * &c), t as u32);
            }
        }
        out
    }

    /// Exterior positions of a column family (one column per block).
    fn positions(&self, cols: &[Vec<usize>]) -> Vec<usize> {
        match self.ctx.ext().labelling() {
            Labelling::Symplectic(a) => cols[0].iter().map(|&l| a.rank(l)).collect(),
            Labelling::Pair(a) => {
                let m = a.n();
                cols[0].iter().map(|&l| a.rank(l)).chain(cols[1].iter().map(|&l| m + a.rank(l))).collect()
            }
        }
    }

    fn columns(&self, positions: &[usize]) -> Vec<Vec<usize>> {
        match self.ctx.ext().labelling() {
            Labelling::Symplectic(a) => vec![positions.iter().map(|&p| a.letter_at(p)).collect()],
            Labelling::Pair(a) => {
                let m = a.n();
                let (v, w): (Vec<usize>, Vec<usize>) = positions.iter().partition(|&&p| p < m);
                vec![v.iter().map(|&p| a.letter_at(p)).collect(), w.iter().map(|&p| a.letter_at(p - m)).collect()]
            }
        }
    }

    pub(crate) fn to_expr(&self, lin: &Lin) -> StraightExpr {
        let fold = self.ctx.kind().folds_d();
        let mut merged: BTreeMap<(u32, Key), BigInt> = BTreeMap::new();
        for ((t, k), v) in lin {
            *merged.entry((if fold { 0 } else { *t }, k.clone())).or_default() += v;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((dpow, k), coeff)| StraightTerm { coeff, dpow, bitab: k.to_bitableau(self.ctx) })
            .collect();
        StraightExpr { context: self.ctx.kind(), terms }
    }
}

/// Straightens one bitableau with a fresh memo.
pub fn straighten(b: &Bitableau, ctx: &Context) -> Result<StraightExpr> {
    Straightener::new(ctx).straighten(b)
}
